#pragma once

#include "lpk/int_matrix.hpp"

#include <cstddef>
#include <vector>

namespace lpk {

/// Smith normal form D = U·M·V together with the inverses of U and V.
struct SmithData {
    IntMatrix U, D, V;
    IntMatrix Uinv, Vinv;
    /// Nonzero invariant factors, positive, each dividing the next. They sit at D(i,i), i < rank().
    std::vector<Int> diag;

    std::size_t rank() const noexcept { return diag.size(); }
};

/// Deterministic Smith normal form: the pivot is always the smallest nonzero |entry|,
/// ties broken by row-major position.
SmithData snf(const IntMatrix& M);

/// Is x in the column span of the matrix that `s` factors?
bool in_column_span(const SmithData& s, const IntVector& x);

/// Coordinates of x with respect to column_span_basis(s). Throws if x is not in the span.
IntVector span_coordinates(const SmithData& s, const IntVector& x);

/// A Z-basis (as columns) of the column span: Uinv[:,i]·d_i for i < rank.
IntMatrix column_span_basis(const SmithData& s);

/// A Z-basis (as columns) of {x : Mx = 0}: the last cols−rank columns of V.
IntMatrix kernel_basis(const SmithData& s);
IntMatrix kernel_basis(const IntMatrix& M);

/// Coordinates of a kernel vector with respect to kernel_basis(s).
IntVector kernel_coordinates(const SmithData& s, const IntVector& x);

}  // namespace lpk
