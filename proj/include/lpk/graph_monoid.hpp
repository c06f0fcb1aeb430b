#pragma once

#include "lpk/graph.hpp"
#include "lpk/int_matrix.hpp"
#include "lpk/vertex_set.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lpk {

/// Element of the free commutative monoid on the vertices: coeffs[v] >= 0.
using MonoidElement = std::vector<Int>;

/// Finitely supported integer combination of generators v(i). Nonnegative elements live in the
/// graded monoid, arbitrary ones in its group completion.
class GradedElement {
public:
    using Key = std::pair<std::size_t, long>;  // (vertex, level)

    GradedElement() = default;
    static GradedElement generator(std::size_t v, long level, const Int& c = 1);
    /// y(level): sum of y[v]·v(level).
    static GradedElement at_level(const IntVector& y, long level);

    void add(std::size_t v, long level, const Int& c);
    Int coefficient(std::size_t v, long level) const;
    const std::map<Key, Int>& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_nonnegative() const;
    long min_level() const;  // requires nonzero
    long max_level() const;  // requires nonzero

    GradedElement operator+(const GradedElement& o) const;
    GradedElement operator-(const GradedElement& o) const;
    GradedElement scaled(const Int& k) const;
    /// The Z-action: v(i) -> v(i+k).
    GradedElement shifted(long k) const;
    /// Forgets levels: sum of coefficients per vertex (length n).
    IntVector forget_levels(std::size_t n) const;

    friend bool operator==(const GradedElement&, const GradedElement&) = default;

private:
    std::map<Key, Int> terms_;
};

/// Result of an equality test. Equal carries a witness, NotEqual a reason.
struct EqVerdict {
    enum class Kind { Equal, NotEqual, Unknown };
    Kind kind = Kind::Unknown;
    std::string reason;
    /// Ungraded Equal: a = trace_a[0] ->1 ... ->1 back, and b = trace_b[0] ->1 ... ->1 back, same back.
    std::vector<MonoidElement> trace_a, trace_b;
    /// Graded Equal: both sides agree after expansion to this level.
    long level = 0;
    std::size_t explored = 0;
    bool truncated = false;
};

const char* to_string(EqVerdict::Kind k);

struct MonoidBudget {
    std::size_t max_states = 100000;
    std::size_t max_mass = 64;
};

/// One successor per non-sink v with a[v] >= 1: one copy of v replaced by the ranges of its edges.
std::vector<MonoidElement> successors_one_step(const Graph& g, const MonoidElement& a);
/// Is b one of the one-step successors of a?
bool is_one_step(const Graph& g, const MonoidElement& a, const MonoidElement& b);
/// Checks that an Equal verdict's traces start at a and b, are valid rewrite chains and meet.
bool verify_trace(const Graph& g, const EqVerdict& v, const MonoidElement& a, const MonoidElement& b);

/// Word problem in the graph monoid: K0-class prefilter, then a joint search of the two
/// rewrite closures in order of (mass, side, element). Mass never decreases along a rewrite,
/// so a larger budget always replays the smaller run first.
EqVerdict ungraded_equal(const Graph& g, const MonoidElement& a, const MonoidElement& b,
                         const MonoidBudget& budget = {});

/// Rewrites `amount` copies of v(level) (v not a sink) into the ranges one level down.
GradedElement graded_expand_step(const Graph& g, const GradedElement& a, std::size_t v, long level, const Int& amount);
/// Expands every non-sink generator above level L, top level first. L must not exceed a's minimum level.
GradedElement graded_expand_to_level(const Graph& g, const GradedElement& a, long L);

/// Decides equality in the graded Grothendieck group (and hence in the cancellative graded monoid):
/// expand the difference to the lowest level present, then follow the level transition until the
/// difference vanishes or a sink term survives; at most |E⁰| further levels are needed.
EqVerdict graded_equal(const Graph& g, const GradedElement& a, const GradedElement& b);

/// Is a nonnegative element in the order ideal generated by {v(i) : v ∈ H}? H must be hereditary and saturated.
bool order_ideal_membership(const Graph& g, const GradedElement& a, const VertexSet& H);

/// Moves an element between graphs sharing vertex names; vertices missing in `to` are dropped.
GradedElement transport(const Graph& from, const GradedElement& a, const Graph& to);

struct RoundtripReport {
    bool passed = true;
    std::size_t checked = 0;
    std::string counterexample;
};

/// Checks f∘g = id and g∘f = id between the graded monoid of subquotient(g,H1,H2) and the graded
/// monoid of restriction(g,H2) modulo the part supported on H1, on randomly rewritten samples.
RoundtripReport quotient_roundtrip(const Graph& g, const VertexSet& H1, const VertexSet& H2, std::size_t samples,
                                   std::uint64_t seed = 1);

/// Literal syntax: "2*v(0)+w(-1)" (graded), "2*v+w" (ungraded); "0" is the zero element.
GradedElement parse_graded_element(const Graph& g, std::string_view text);
MonoidElement parse_monoid_element(const Graph& g, std::string_view text);
std::string to_string(const Graph& g, const GradedElement& a);
std::string to_string(const Graph& g, const MonoidElement& a);

}  // namespace lpk
