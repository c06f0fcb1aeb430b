#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace lpk {

using Int = mpz_class;
using IntVector = std::vector<Int>;

/// Dense arbitrary-precision integer matrix, row-major. Zero-sized shapes are valid.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
    /// Matrix whose columns are the given vectors, each of length `rows`.
    static IntMatrix from_columns(std::size_t rows, std::span<const IntVector> cols);
    static IntMatrix column(const IntVector& v);
    static IntMatrix diagonal(std::span<const Int> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector col(std::size_t c) const;
    IntVector row(std::size_t r) const;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntVector operator*(const IntVector& v) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    IntMatrix scaled(const Int& k) const;
    IntMatrix power(unsigned e) const;

    /// Rows (resp. columns) selected by index, in the given order.
    IntMatrix select_rows(std::span<const std::size_t> idx) const;
    IntMatrix select_cols(std::span<const std::size_t> idx) const;
    IntMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

    /// [this | rhs]; both must have the same row count.
    IntMatrix hconcat(const IntMatrix& rhs) const;
    /// [this ; rhs]; both must have the same column count.
    IntMatrix vconcat(const IntMatrix& rhs) const;
    /// Block diagonal diag(this, rhs).
    IntMatrix direct_sum(const IntMatrix& rhs) const;

    bool is_zero() const;
    bool is_square() const noexcept { return rows_ == cols_; }
    bool is_nonnegative() const;

    /// Exact determinant (fraction-free Bareiss elimination). Requires a square matrix.
    Int determinant() const;

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

bool is_zero_vector(const IntVector& v);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);

}  // namespace lpk
