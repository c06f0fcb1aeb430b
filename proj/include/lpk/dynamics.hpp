#pragma once

#include "lpk/abelian_group.hpp"
#include "lpk/graph.hpp"
#include "lpk/graph_monoid.hpp"
#include "lpk/int_matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace lpk {

/// coker(I − A).
FgAbGroup bowen_franks(const IntMatrix& A);
/// det(I − A).
Int det_invariant(const IntMatrix& A);

/// The matrix used for a graph on the dynamics side: A_Eᵗ, so (k, x) ≡ (k+1, A_Eᵗ x) expands vertices into ranges.
IntMatrix dynamics_matrix(const Graph& g);

/// Lag-ℓ shift equivalence data: A·R = R·B, S·A = B·S, R·S = A^ℓ, S·R = B^ℓ, with R of shape nA × nB.
struct ShiftEqCertificate {
    IntMatrix R, S;
    unsigned lag = 1;
};

/// Checks the four equations and nonnegativity. Throws PreconditionError on shape mismatch.
bool verify_certificate(const IntMatrix& A, const IntMatrix& B, const ShiftEqCertificate& c);

struct ShiftEqResult {
    enum class Kind { Certificate, Obstruction, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<ShiftEqCertificate> certificate;
    std::string reason;
    FgAbGroup bf_a, bf_b;
    Int det_a, det_b;
    std::size_t candidates = 0;  // R matrices examined
    bool truncated = false;
};

const char* to_string(ShiftEqResult::Kind k);

/// Invariant screen (Bowen–Franks group, det(I − A)), then for ℓ = 1..max_lag an exhaustive search over
/// R in the box [0, max_entry] solving A·R = R·B, with S solved from the remaining linear equations.
ShiftEqResult shift_equivalent_bounded(const IntMatrix& A, const IntMatrix& B, unsigned max_lag, unsigned max_entry,
                                       std::size_t max_candidates = 1000000);

/// Krieger's dimension group lim(Zⁿ, A) with elements (level, vector) and (k, x) ≡ (k+1, A x).
struct DimensionTriple {
    IntMatrix A;
    explicit DimensionTriple(IntMatrix a);
    std::size_t size() const noexcept { return A.rows(); }
};

struct DimElement {
    long level = 0;
    IntVector x;
};

bool dimension_triple_equal(const DimensionTriple& t, const DimElement& a, const DimElement& b);
/// The automorphism (k, x) ↦ (k, A x).
DimElement dimension_shift(const DimensionTriple& t, const DimElement& a);
DimElement dimension_add(const DimensionTriple& t, const DimElement& a, const DimElement& b);
/// Some representative (k + j, A^j x), j <= bound, is entrywise nonnegative. Sound, not complete.
bool dimension_positive(const DimensionTriple& t, const DimElement& a, std::size_t bound);

/// Graded element → dimension group element of dynamics_matrix(g); level i becomes level −i.
DimElement to_dimension(const Graph& g, const GradedElement& a);

}  // namespace lpk
