#pragma once

#include "lpk/abelian_group.hpp"
#include "lpk/dynamics.hpp"
#include "lpk/filtered_k.hpp"
#include "lpk/graph.hpp"
#include "lpk/graph_monoid.hpp"
#include "lpk/ideal_lattice.hpp"
#include "lpk/k_invariants.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace lpk::report {

using nlohmann::json;

/// Integers fitting in 64 bits become JSON numbers, larger ones decimal strings.
json int_json(const Int& x);
Int int_from_json(const json& j);

json to_json(const IntMatrix& m);  // array of rows
IntMatrix matrix_from_json(const json& j, std::size_t cols_if_empty = 0);

json to_json(const FgAbGroup& g);  // {"free_rank", "torsion", "text"}
FgAbGroup group_from_json(const json& j);

json to_json(const Graph& g);  // {"vertices": [...], "edges": [[id, source, range], ...]}
Graph graph_from_json(const json& j);
json names(const Graph& g, const VertexSet& s);

json to_json(const ShiftEqCertificate& c);
ShiftEqCertificate certificate_from_json(const json& j);

json to_json(const KOne& k);
json to_json(const GroupMap& f);
json to_json(const NodeVerdict& v);
json to_json(const EqVerdict& v, const Graph& g);
json to_json(const IdealLattice& L, const Graph& g);
json to_json(const SpectrumTopology& ts, const Graph& g);
json to_json(const SixTermRow& r, const Graph& g);
json to_json(const VdbReport& r);
json to_json(const FilteredKTable& t);
json to_json(const ComparisonReport& r, const FilteredKTable& a, const FilteredKTable& b);
json to_json(const ShiftEqResult& r);

/// Matrix file: one row per line, integers separated by whitespace; '#' starts a comment.
IntMatrix parse_matrix(std::string_view text);
std::string matrix_to_text(const IntMatrix& m);

/// "symbolic", "divisible" or a prime power q.
FieldModel parse_field(std::string_view text);

/// Comma separated vertex names ("" is the empty set).
VertexSet parse_vertex_set(const Graph& g, std::string_view text);

}  // namespace lpk::report
