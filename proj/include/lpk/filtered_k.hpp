#pragma once

#include "lpk/abelian_group.hpp"
#include "lpk/dynamics.hpp"
#include "lpk/graph.hpp"
#include "lpk/ideal_lattice.hpp"
#include "lpk/k_invariants.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace lpk {

struct FkOptions {
    std::size_t lattice_cap = kDefaultLatticeCap;
    std::size_t row_cap = 20000;  // number of lattice triples
    std::size_t enumeration_cap = 10000;
};

/// K-groups attached to one canonical locally closed set of the spectrum.
struct FkEntry {
    LocallyClosed y;
    Graph graph;  // subquotient(g, H_inner, H_outer)
    FgAbGroup k0;
    KOne k1bar;
};

struct FkRow {
    std::size_t I, J, P;  // lattice indices, I ⊆ J ⊆ P
    SixTermRow row;
};

/// K0 and reduced K1 of every locally closed piece of the spectrum, with the six-term rows of all
/// lattice triples.
struct FilteredKTable {
    Graph graph;
    CoeffGroup coeff;
    SpectrumTopology topology;
    std::vector<FkEntry> entries;  // in locally_closed_all order
    std::vector<FkRow> rows;       // triples in lexicographic order

    bool exact() const;
    const FkEntry* entry_for(const VertexSet& primes) const;
    const FkRow* row_for(std::size_t I, std::size_t J, std::size_t P) const;
};

/// Throws CapExceeded when the lattice or the number of triples exceeds the caps.
FilteredKTable fkbar(const Graph& g, const CoeffGroup& coeff, const FkOptions& opts = {});

/// One compared quantity under a fixed lattice isomorphism.
struct FkCheck {
    std::string kind;  // "K0", "K1bar", "map", "exactness", "squares"
    std::string where;
    std::string left, right;
    bool match = true;
};

/// Search for isomorphisms α between matched finite K0 groups (one per lattice pair I ⊆ J) making
/// the squares of the K0 maps in every row commute. Groups with a free summand are not searched.
struct SquareSearch {
    bool attempted = false;
    bool found = false;
    bool exhausted_budget = false;
    std::size_t variables = 0;  // pairs with finite, nontrivial K0
    std::size_t nodes = 0;
    std::string note;
};

struct CompareOptions {
    FkOptions fk;
    std::optional<ShiftEqCertificate> certificate;  // between dynamics_matrix(g1) and dynamics_matrix(g2)
    std::size_t iso_cap = 1000;                     // lattice isomorphisms tried
    std::size_t square_group_cap = 10000;           // max order of a group in the square search
    std::size_t square_iso_cap = 2000;              // max isomorphisms per matched pair
    std::size_t square_node_cap = 200000;
};

struct ComparisonReport {
    bool lattices_isomorphic = false;
    bool from_certificate = false;
    std::size_t isomorphisms_tried = 0;
    std::vector<std::size_t> lattice_iso;  // the consistent one, or the one that got furthest
    std::vector<FkCheck> checks;           // under lattice_iso, in order
    bool exact_left = false, exact_right = false;
    SquareSearch squares;
    bool consistent = false;
    bool truncated = false;  // the isomorphism cap stopped the search before a consistent one was found
    std::string obstruction_kind;  // empty when consistent
    std::string obstruction;
    static constexpr const char* note =
        "consistent is a necessary condition for an isomorphism of filtered K-theory, not a proof";
};

ComparisonReport compare_fkbar(const FilteredKTable& a, const FilteredKTable& b, const CompareOptions& opts = {});
ComparisonReport compare_fkbar(const Graph& g1, const Graph& g2, const CoeffGroup& coeff,
                               const CompareOptions& opts = {});

/// Lattice map H ↦ hsat closure of the supports of S e_v (v ∈ H), induced by a verified certificate
/// between the dynamics matrices of two sink-free graphs. Throws PreconditionError when the graphs
/// have sinks, the certificate fails, or the induced map is not a lattice isomorphism.
std::vector<std::size_t> lattice_iso_from_certificate(const Graph& g1, const IdealLattice& L1, const Graph& g2,
                                                      const IdealLattice& L2, const ShiftEqCertificate& c);

/// A random vertex permutation with fresh names.
Graph relabel(const Graph& g, std::uint64_t seed);

}  // namespace lpk
