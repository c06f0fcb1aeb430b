#pragma once

#include "lpk/abelian_group.hpp"
#include "lpk/graph.hpp"
#include "lpk/graph_monoid.hpp"
#include "lpk/int_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lpk {

/// Coefficient field for K1: a finite field F_q, a field with divisible unit group, or a symbol.
struct FieldModel {
    enum class Kind { Finite, Divisible, Symbolic };
    Kind kind = Kind::Symbolic;
    Int q = 0;

    static FieldModel finite(const Int& q);  // q must be a prime power
    static FieldModel divisible() { return {Kind::Divisible, 0}; }
    static FieldModel symbolic() { return {Kind::Symbolic, 0}; }

    /// k× (cyclic of order q−1 for F_q).
    CoeffGroup units() const;
    /// k×/{±1} (cyclic of order (q−1)/gcd(2,q−1) for F_q).
    CoeffGroup reduced_units() const;
    std::string to_string() const;
};

bool is_prime_power(const Int& q);

/// The matrix (Bᵗ − I ; Cᵗ): Z^R -> Z^{E⁰}. Rows follow vertex order; column v ∈ R has
/// entry A(v,w) − [v = w] in row w.
IntMatrix k_matrix(const Graph& g);

struct KZero {
    AdjacencyDecomposition adjacency;
    PresentedGroup group;  // generators are the vertices, in order
};

KZero k0(const Graph& g);

/// K1 or reduced K1 in split form: a coefficient cokernel plus the free group ker K.
struct KOne {
    CoefficientCokernel coker_part;
    IntMatrix ker_part;  // columns: a Z-basis of ker K inside Z^R

    std::size_t kernel_rank() const noexcept { return ker_part.cols(); }
    /// Whole group when the coefficients are concrete.
    std::optional<FgAbGroup> group() const;
    /// "Z ⊕ Z/2", or "Z ⊕ G/2G" for symbolic coefficients.
    std::string to_string() const;
};

/// K1 with coefficients in k×.
KOne k1(const Graph& g, const FieldModel& field);
/// Reduced K1 with coefficients in k×/{±1}.
KOne k1bar(const Graph& g, const FieldModel& field);
/// Split form for an explicit coefficient group.
KOne k1_with(const Graph& g, const CoeffGroup& coeff);

/// φ(v(i)) = v(i+1) − v(i), extended linearly.
GradedElement phi(const GradedElement& x);
/// ψ(y) = y(0) for y ∈ Z^{E⁰}.
inline GradedElement psi(const IntVector& y) { return GradedElement::at_level(y, 0); }
/// Embeds y ∈ Z^R into Z^{E⁰}.
IntVector embed_regular(const Graph& g, const IntVector& y);

struct CheckReport {
    bool passed = true;
    std::size_t checked = 0;
    std::string counterexample;
};

/// φ(ψ(y)) equals ψ(K y) in the graded Grothendieck group for random y ∈ Z^R.
CheckReport psi_diagram_check(const Graph& g, std::size_t trials, std::uint64_t seed = 1);

struct VdbReport {
    IntMatrix k_matrix;
    IntMatrix kernel_basis;
    FgAbGroup kernel;         // ker K ≅ ker φ
    FgAbGroup cokernel;       // coker K ≅ coker φ ≅ K0
    FgAbGroup k0;
    KOne k1;
    bool forget_surjective = false;      // each [v] in K0 is the image of v(0)
    bool forget_kills_phi = false;       // U∘φ = 0 on sampled elements
    bool kernel_in_ker_phi = false;      // φ(ψ(x)) = 0 for the kernel basis
    bool kernel_psi_injective = false;   // ψ(x) ≠ 0 for nonzero kernel basis vectors
    bool telescoping = false;            // u(i) − u(j) = Σ_{j<=k<i} φ(u(k)) on samples
    bool psi_diagram = false;
    bool ok() const {
        return forget_surjective && forget_kills_phi && kernel_in_ker_phi && kernel_psi_injective && telescoping &&
               psi_diagram;
    }
};

/// Assembles K1 -> K0gr -(φ)-> K0gr -(U)-> K0 -> 0 and checks the identifications along it.
VdbReport vdb_sequence(const Graph& g, const FieldModel& field, std::size_t samples = 25, std::uint64_t seed = 1);

/// The connecting map of the short exact sequence attached to a hereditary saturated H.
struct ConnectingMap {
    Graph restriction_graph;  // E_H
    Graph quotient_graph;     // E/H
    IntMatrix X;              // rows: regular vertices of E/H, columns: vertices of H; edge counts
    IntMatrix kernel_basis;   // basis of ker K_{E/H} in Z^{R(E/H)}
    GroupMap map;             // Z^{kernel rank} -> coker K_{E_H}, x |-> [Xᵗ x]
};

ConnectingMap connecting_delta(const Graph& g, const VertexSet& H);

/// Compares [Xᵗ x] with the connecting map computed on graded groups (lift, apply φ, push down
/// until the E/H part vanishes, read the H part in K0(E_H)) for random kernel elements x.
CheckReport snake_check(const Graph& g, const VertexSet& H, std::size_t trials, std::uint64_t seed = 1);

/// The exact row K1(J/I) -> K1(P/I) -> K1(P/J) -> K0(J/I) -> K0(P/I) -> K0(P/J) for HI ⊆ HJ ⊆ HP,
/// computed on subquotient graphs.
struct SixTermRow {
    VertexSet HI, HJ, HP;
    Graph JI, PI, PJ;
    KOne k1_JI, k1_PI, k1_PJ;
    FgAbGroup k0_JI, k0_PI, k0_PJ;
    /// Z-level maps tau, tau', delta, taubar, taubar' (kernel parts of K1 in kernel coordinates, K0 on vertices).
    std::vector<GroupMap> integer_maps;
    std::vector<NodeVerdict> integer_exactness;
    /// For concrete coefficients: the same row with the coefficient cokernels added to the K1 terms.
    std::vector<GroupMap> full_maps;
    std::vector<NodeVerdict> full_exactness;
    /// Coefficient row coker(K_JI⊗G) -> coker(K_PI⊗G) -> coker(K_PJ⊗G) -> 0 checked by listing elements
    /// when every group has at most `enumeration_cap` elements.
    bool coefficient_enumerated = false;
    std::vector<NodeVerdict> coefficient_exactness;

    bool integer_exact() const;
    bool full_exact() const;  // true when not computed
    bool coefficient_exact() const;  // true when not enumerated
    bool exact() const { return integer_exact() && full_exact() && coefficient_exact(); }
};

SixTermRow six_term_row(const Graph& g, const VertexSet& HI, const VertexSet& HJ, const VertexSet& HP,
                        const CoeffGroup& coeff, std::size_t enumeration_cap = 10000);

/// Matrix of the vertex map Z^{from-subset} -> Z^{to-subset} that sends a vertex to the vertex of the
/// same name (or to 0 when absent). `from_idx` and `to_idx` list the coordinates, by vertex index.
IntMatrix name_map(const Graph& from, const std::vector<std::size_t>& from_idx, const Graph& to,
                   const std::vector<std::size_t>& to_idx);

}  // namespace lpk
