#pragma once

#include "lpk/graph.hpp"
#include "lpk/vertex_set.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace lpk {

inline constexpr std::size_t kDefaultLatticeCap = 4096;

/// Least hereditary saturated superset of `seed`.
VertexSet hsat_closure(const Graph& g, const VertexSet& seed);

/// The hereditary saturated subsets of a graph ordered by inclusion. Elements are sorted
/// by size and then by member list, so index 0 is the empty set and the last index is E⁰.
struct IdealLattice {
    std::vector<VertexSet> elements;
    std::vector<std::vector<bool>> leq;  // leq[i][j]: elements[i] ⊆ elements[j]
    std::vector<std::vector<std::size_t>> meet_table, join_table;

    std::size_t size() const noexcept { return elements.size(); }
    std::size_t bottom() const noexcept { return 0; }
    std::size_t top() const noexcept { return elements.size() - 1; }
    std::size_t meet(std::size_t i, std::size_t j) const { return meet_table[i][j]; }
    std::size_t join(std::size_t i, std::size_t j) const { return join_table[i][j]; }
    std::optional<std::size_t> index_of(const VertexSet& s) const;
};

/// Builds the lattice from an explicit list of hereditary saturated sets (any order).
IdealLattice make_lattice(const Graph& g, std::vector<VertexSet> sets);

/// Enumerates by closing the single-vertex closures under joins. Throws CapExceeded beyond `cap` elements.
IdealLattice enumerate_hsat(const Graph& g, std::size_t cap = kDefaultLatticeCap);

/// Reference enumeration scanning all 2^|V| subsets (|V| <= 24).
IdealLattice enumerate_hsat_bruteforce(const Graph& g);

/// Graded prime spectrum with its open sets.
struct SpectrumTopology {
    IdealLattice lattice;
    std::size_t num_vertices = 0;
    /// Lattice indices of the primes: proper elements with downward-directed complement.
    std::vector<std::size_t> primes;
    /// opens[h] = W(elements[h]) = positions p in `primes` with elements[h] ⊄ elements[primes[p]].
    std::vector<VertexSet> opens;

    std::size_t num_primes() const noexcept { return primes.size(); }
    /// Lattice element whose open set is `U`, if any.
    std::optional<std::size_t> element_of_open(const VertexSet& U) const;
};

SpectrumTopology graded_primes(const Graph& g, const IdealLattice& lattice);
inline SpectrumTopology graded_primes(const Graph& g) { return graded_primes(g, enumerate_hsat(g)); }

/// Lattice-theoretic primes: proper H with (H1 ∧ H2 ⊆ H ⇒ H1 ⊆ H or H2 ⊆ H).
std::vector<std::size_t> lattice_prime_elements(const IdealLattice& lattice);

/// Intersection of the primes in T (a subset of prime positions); E⁰ when T is empty.
VertexSet kernel_of(const SpectrumTopology& ts, const VertexSet& T);

/// Locally closed subset Y = W(outer) \ W(inner) with inner ⊆ outer (lattice indices).
struct LocallyClosed {
    std::size_t outer;
    std::size_t inner;
    VertexSet primes;  // Y as a set of prime positions
};

/// One canonical pair per distinct Y (the empty set included, listed first). Among the pairs
/// representing Y the outer open with fewest primes is chosen, ties broken by lattice index;
/// the inner open is then outer \ Y.
std::vector<LocallyClosed> locally_closed_all(const SpectrumTopology& ts);

/// Graph whose K-theory is attached to Y: subquotient(g, H_inner, H_outer).
Graph locally_closed_graph(const Graph& g, const SpectrumTopology& ts, const LocallyClosed& y);

/// All order isomorphisms L1 -> L2, each as a vector f with f[i] = image of element i.
/// Throws CapExceeded when more than `cap` isomorphisms exist.
std::vector<std::vector<std::size_t>> lattice_isomorphisms(const IdealLattice& L1, const IdealLattice& L2,
                                                           std::size_t cap = 100000);

}  // namespace lpk
