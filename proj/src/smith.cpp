#include "lpk/smith.hpp"

#include "lpk/errors.hpp"

#include <utility>

namespace lpk {

namespace {

// Working state: A = U·M·V is kept current under every elementary operation.
struct Reducer {
    IntMatrix A, U, Uinv, V, Vinv;

    explicit Reducer(const IntMatrix& M)
        : A(M),
          U(IntMatrix::identity(M.rows())),
          Uinv(IntMatrix::identity(M.rows())),
          V(IntMatrix::identity(M.cols())),
          Vinv(IntMatrix::identity(M.cols())) {}

    // row i += k * row j
    void add_row(std::size_t i, std::size_t j, const Int& k) {
        for (std::size_t c = 0; c < A.cols(); ++c) A(i, c) += k * A(j, c);
        for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) += k * U(j, c);
        for (std::size_t r = 0; r < Uinv.rows(); ++r) Uinv(r, j) -= k * Uinv(r, i);
    }
    // col i += k * col j
    void add_col(std::size_t i, std::size_t j, const Int& k) {
        for (std::size_t r = 0; r < A.rows(); ++r) A(r, i) += k * A(r, j);
        for (std::size_t r = 0; r < V.rows(); ++r) V(r, i) += k * V(r, j);
        for (std::size_t c = 0; c < Vinv.cols(); ++c) Vinv(j, c) -= k * Vinv(i, c);
    }
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < A.cols(); ++c) std::swap(A(i, c), A(j, c));
        for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U(i, c), U(j, c));
        for (std::size_t r = 0; r < Uinv.rows(); ++r) std::swap(Uinv(r, i), Uinv(r, j));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < A.rows(); ++r) std::swap(A(r, i), A(r, j));
        for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V(r, i), V(r, j));
        for (std::size_t c = 0; c < Vinv.cols(); ++c) std::swap(Vinv(i, c), Vinv(j, c));
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < A.cols(); ++c) A(i, c) = -A(i, c);
        for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) = -U(i, c);
        for (std::size_t r = 0; r < Uinv.rows(); ++r) Uinv(r, i) = -Uinv(r, i);
    }

    // Smallest nonzero |A(r,c)| with r,c >= t; false if the block is zero.
    bool find_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const {
        bool found = false;
        for (std::size_t r = t; r < A.rows(); ++r)
            for (std::size_t c = t; c < A.cols(); ++c) {
                if (A(r, c) == 0) continue;
                if (!found || abs(A(r, c)) < abs(A(pr, pc))) {
                    pr = r;
                    pc = c;
                    found = true;
                }
            }
        return found;
    }

    // Clears row t and column t outside the pivot. Returns when both are zero.
    void clear_cross(std::size_t t) {
        for (;;) {
            bool dirty = false;
            for (std::size_t r = t + 1; r < A.rows(); ++r) {
                if (A(r, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), A(r, t).get_mpz_t(), A(t, t).get_mpz_t());
                add_row(r, t, -q);
                if (A(r, t) != 0) dirty = true;
            }
            for (std::size_t c = t + 1; c < A.cols(); ++c) {
                if (A(t, c) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), A(t, c).get_mpz_t(), A(t, t).get_mpz_t());
                add_col(c, t, -q);
                if (A(t, c) != 0) dirty = true;
            }
            if (!dirty) return;
            // A remainder is now smaller than the pivot: move the smallest one in.
            std::size_t br = t, bc = t;
            for (std::size_t r = t + 1; r < A.rows(); ++r)
                if (A(r, t) != 0 && abs(A(r, t)) < abs(A(br, bc))) br = r, bc = t;
            for (std::size_t c = t + 1; c < A.cols(); ++c)
                if (A(t, c) != 0 && abs(A(t, c)) < abs(A(br, bc))) br = t, bc = c;
            swap_rows(t, br);
            swap_cols(t, bc);
        }
    }
};

}  // namespace

SmithData snf(const IntMatrix& M) {
    Reducer red(M);
    std::size_t t = 0;
    const std::size_t lim = std::min(M.rows(), M.cols());
    while (t < lim) {
        std::size_t pr = 0, pc = 0;
        if (!red.find_pivot(t, pr, pc)) break;
        red.swap_rows(t, pr);
        red.swap_cols(t, pc);
        for (;;) {
            red.clear_cross(t);
            // Divisibility: fold an offending row into the pivot row and retry.
            bool fixed = true;
            for (std::size_t r = t + 1; r < red.A.rows() && fixed; ++r)
                for (std::size_t c = t + 1; c < red.A.cols(); ++c)
                    if (!mpz_divisible_p(red.A(r, c).get_mpz_t(), red.A(t, t).get_mpz_t())) {
                        red.add_row(t, r, 1);
                        fixed = false;
                        break;
                    }
            if (fixed) break;
        }
        if (red.A(t, t) < 0) red.negate_row(t);
        ++t;
    }
    SmithData s;
    for (std::size_t i = 0; i < t; ++i) s.diag.push_back(red.A(i, i));
    s.D = std::move(red.A);
    s.U = std::move(red.U);
    s.Uinv = std::move(red.Uinv);
    s.V = std::move(red.V);
    s.Vinv = std::move(red.Vinv);
    return s;
}

bool in_column_span(const SmithData& s, const IntVector& x) {
    if (x.size() != s.U.cols()) throw PreconditionError("in_column_span: length mismatch");
    IntVector y = s.U * x;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < s.rank()) {
            if (!mpz_divisible_p(y[i].get_mpz_t(), s.diag[i].get_mpz_t())) return false;
        } else if (y[i] != 0) {
            return false;
        }
    }
    return true;
}

IntVector span_coordinates(const SmithData& s, const IntVector& x) {
    if (!in_column_span(s, x)) throw PreconditionError("span_coordinates: vector not in span");
    IntVector y = s.U * x;
    IntVector out(s.rank());
    for (std::size_t i = 0; i < s.rank(); ++i) mpz_divexact(out[i].get_mpz_t(), y[i].get_mpz_t(), s.diag[i].get_mpz_t());
    return out;
}

IntMatrix column_span_basis(const SmithData& s) {
    IntMatrix B(s.Uinv.rows(), s.rank());
    for (std::size_t i = 0; i < s.rank(); ++i)
        for (std::size_t r = 0; r < B.rows(); ++r) B(r, i) = s.Uinv(r, i) * s.diag[i];
    return B;
}

IntMatrix kernel_basis(const SmithData& s) {
    const std::size_t n = s.V.cols();
    IntMatrix K(n, n - s.rank());
    for (std::size_t j = s.rank(); j < n; ++j)
        for (std::size_t r = 0; r < n; ++r) K(r, j - s.rank()) = s.V(r, j);
    return K;
}

IntMatrix kernel_basis(const IntMatrix& M) { return kernel_basis(snf(M)); }

IntVector kernel_coordinates(const SmithData& s, const IntVector& x) {
    IntVector y = s.Vinv * x;
    for (std::size_t i = 0; i < s.rank(); ++i)
        if (y[i] != 0) throw PreconditionError("kernel_coordinates: vector not in kernel");
    return IntVector(y.begin() + static_cast<std::ptrdiff_t>(s.rank()), y.end());
}

}  // namespace lpk
