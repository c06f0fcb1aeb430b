#pragma once

#include "lpk/int_matrix.hpp"
#include "lpk/smith.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lpk {

/// Finitely generated abelian group Z^r ⊕ Z/d1 ⊕ ... ⊕ Z/dk in invariant-factor form
/// (every d_i >= 2, d_i | d_{i+1}). Equality of values is isomorphism of groups.
struct FgAbGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;

    /// Canonical form of Z^free_rank ⊕ (⊕ Z/m) for arbitrary cyclic orders m (0 means Z, 1 is dropped).
    static FgAbGroup from_cyclic(std::size_t free_rank, const std::vector<Int>& orders);

    bool is_trivial() const noexcept { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const noexcept { return free_rank == 0; }
    /// Order of a finite group. Throws for infinite groups.
    Int order() const;
    /// Direct sum.
    FgAbGroup operator+(const FgAbGroup& rhs) const;

    /// "0", "Z", "Z^2 ⊕ Z/2 ⊕ Z/4"; free part first.
    std::string to_string() const;

    friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;
};

bool group_iso(const FgAbGroup& a, const FgAbGroup& b);

/// Z^n modulo the column span of a relation matrix, with its n generators kept distinguished.
class PresentedGroup {
public:
    PresentedGroup() : PresentedGroup(0, IntMatrix(0, 0)) {}
    PresentedGroup(std::size_t generators, IntMatrix relations);

    static PresentedGroup free(std::size_t n) { return PresentedGroup(n, IntMatrix(n, 0)); }
    static PresentedGroup cokernel(const IntMatrix& M) { return PresentedGroup(M.rows(), M); }

    std::size_t generators() const noexcept { return gens_; }
    const IntMatrix& relations() const noexcept { return rel_; }
    const SmithData& smith() const noexcept { return smith_; }
    const FgAbGroup& normal_form() const noexcept { return nf_; }

    bool is_zero(const IntVector& x) const { return in_column_span(smith_, x); }
    bool equal(const IntVector& x, const IntVector& y) const { return is_zero(sub(x, y)); }

    /// Coordinates in the normal form: torsion coordinates reduced mod d_i, then free coordinates.
    /// Two vectors give equal coordinates iff they are equal in the group.
    IntVector coordinates(const IntVector& x) const;
    /// Generator vector representing the element with the given normal-form coordinates.
    IntVector from_coordinates(const IntVector& coords) const;

    /// All elements as generator vectors, in lexicographic order of coordinates.
    /// Throws CapExceeded when the group is infinite or larger than `cap`.
    std::vector<IntVector> enumerate(std::size_t cap) const;

    /// Same generator count and equal relation span.
    bool same_as(const PresentedGroup& other) const;

private:
    std::size_t gens_;
    IntMatrix rel_;
    SmithData smith_;
    FgAbGroup nf_;
    std::vector<std::size_t> tors_idx_;  // SNF positions carrying torsion factors
    std::size_t rank_ = 0;
};

/// Homomorphism between presented groups, given by a matrix on generators.
struct GroupMap {
    PresentedGroup domain;
    PresentedGroup codomain;
    IntMatrix matrix;  // codomain.generators() × domain.generators()

    GroupMap(PresentedGroup dom, PresentedGroup cod, IntMatrix m);

    IntVector apply(const IntVector& x) const { return matrix * x; }
    /// Does the matrix carry every domain relation into the codomain relation span?
    bool well_defined() const;
};

bool check_well_defined(const GroupMap& f);

/// Group (span(S) + span(R)) / span(R) for generating sets given as columns.
FgAbGroup lattice_quotient(const IntMatrix& S, const IntMatrix& R);

/// Generating set (as columns) of the preimage lattice {x : Mx ∈ span(R)} for a map with relations R.
IntMatrix preimage_lattice(const IntMatrix& M, const IntMatrix& R);

struct MapInvariants {
    FgAbGroup kernel, image, cokernel;
    friend bool operator==(const MapInvariants&, const MapInvariants&) = default;
};

MapInvariants map_invariants(const GroupMap& f);

struct NodeVerdict {
    std::size_t node;  // position i: between map i-1 and map i
    bool exact;
    bool image_in_kernel;
    bool kernel_in_image;
};

/// Exactness at every interior node of a composable sequence. Throws PreconditionError
/// when consecutive maps do not share the middle group.
std::vector<NodeVerdict> check_exact(const std::vector<GroupMap>& seq);

/// Same verdicts computed by listing elements; nullopt when some group is infinite or bigger than cap.
std::optional<std::vector<NodeVerdict>> check_exact_by_enumeration(const std::vector<GroupMap>& seq,
                                                                   std::size_t cap);

/// Coefficient group G in which cokernels are taken.
struct CoeffGroup {
    enum class Kind { FiniteCyclic, FgAbelian, Divisible, Symbolic };
    Kind kind = Kind::Symbolic;
    FgAbGroup group;         // FiniteCyclic and FgAbelian
    std::string name = "G";  // Divisible and Symbolic

    static CoeffGroup cyclic(const Int& m);
    static CoeffGroup abelian(const FgAbGroup& g);
    static CoeffGroup divisible(std::string name = "G");
    static CoeffGroup symbolic(std::string name = "G");

    bool is_concrete() const noexcept { return kind == Kind::FiniteCyclic || kind == Kind::FgAbelian; }
};

/// coker(M ⊗ G) = ⊕ G/d_i G ⊕ G^(rows−rank).
struct CoefficientCokernel {
    std::optional<FgAbGroup> group;  // set when G is concrete
    std::string expression;          // always set, e.g. "G/2G ⊕ G^3"
    std::size_t free_copies = 0;     // the exponent rows−rank
    std::vector<Int> quotients;      // the d_i >= 2 contributing G/d_i G

    std::string to_string() const { return group ? group->to_string() : expression; }
};

CoefficientCokernel coker_with_coefficients(const IntMatrix& M, const CoeffGroup& G);

/// coker(M) ⊗ G as a presented group, G concrete: generators rows×factors, factor-major per row.
PresentedGroup tensor_presentation(const IntMatrix& M, const FgAbGroup& G);
/// f ⊗ id on the generators of tensor_presentation with `factors` cyclic factors.
IntMatrix tensor_map(const IntMatrix& f, std::size_t factors);
/// Number of cyclic factors of G used by tensor_presentation.
std::size_t coefficient_factors(const FgAbGroup& G);

}  // namespace lpk
