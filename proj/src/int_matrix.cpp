#include "lpk/int_matrix.hpp"

#include "lpk/errors.hpp"

#include <sstream>
#include <utility>

namespace lpk {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw PreconditionError("IntMatrix: ragged initializer");
        for (long x : r) data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, std::span<const IntVector> cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw PreconditionError("IntMatrix::from_columns: length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

IntMatrix IntMatrix::column(const IntVector& v) {
    IntMatrix m(v.size(), 1);
    for (std::size_t r = 0; r < v.size(); ++r) m(r, 0) = v[r];
    return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Int> d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

IntVector IntMatrix::col(std::size_t c) const {
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

IntVector IntMatrix::row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw PreconditionError("IntMatrix: product shape mismatch");
    IntMatrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) p(i, j) += a * rhs(k, j);
        }
    return p;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
    if (cols_ != v.size()) throw PreconditionError("IntMatrix: vector length mismatch");
    IntVector out(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw PreconditionError("IntMatrix: sum shape mismatch");
    IntMatrix s(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] += rhs.data_[i];
    return s;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw PreconditionError("IntMatrix: difference shape mismatch");
    IntMatrix s(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] -= rhs.data_[i];
    return s;
}

IntMatrix IntMatrix::scaled(const Int& k) const {
    IntMatrix s(*this);
    for (auto& x : s.data_) x *= k;
    return s;
}

IntMatrix IntMatrix::power(unsigned e) const {
    if (!is_square()) throw PreconditionError("IntMatrix::power: matrix not square");
    IntMatrix result = identity(rows_);
    IntMatrix base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> idx) const {
    IntMatrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(idx[i], c);
    return m;
}

IntMatrix IntMatrix::select_cols(std::span<const std::size_t> idx) const {
    IntMatrix m(rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < idx.size(); ++j) m(r, j) = (*this)(r, idx[j]);
    return m;
}

IntMatrix IntMatrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    IntMatrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
    return m;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_) throw PreconditionError("IntMatrix::hconcat: row count mismatch");
    IntMatrix m(rows_, cols_ + rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
        for (std::size_t c = 0; c < rhs.cols_; ++c) m(r, cols_ + c) = rhs(r, c);
    }
    return m;
}

IntMatrix IntMatrix::vconcat(const IntMatrix& rhs) const {
    if (cols_ != rhs.cols_) throw PreconditionError("IntMatrix::vconcat: column count mismatch");
    IntMatrix m(rows_ + rhs.rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
    for (std::size_t r = 0; r < rhs.rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(rows_ + r, c) = rhs(r, c);
    return m;
}

IntMatrix IntMatrix::direct_sum(const IntMatrix& rhs) const {
    IntMatrix m(rows_ + rhs.rows_, cols_ + rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
    for (std::size_t r = 0; r < rhs.rows_; ++r)
        for (std::size_t c = 0; c < rhs.cols_; ++c) m(rows_ + r, cols_ + c) = rhs(r, c);
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

bool IntMatrix::is_nonnegative() const {
    for (const auto& x : data_)
        if (x < 0) return false;
    return true;
}

Int IntMatrix::determinant() const {
    if (!is_square()) throw PreconditionError("determinant of a non-square matrix");
    const std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a(*this);
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << "; ";
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) os << ' ';
            os << (*this)(r, c);
        }
    }
    os << ']';
    return os.str();
}

bool is_zero_vector(const IntVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

IntVector add(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw PreconditionError("vector length mismatch");
    IntVector s(a);
    for (std::size_t i = 0; i < a.size(); ++i) s[i] += b[i];
    return s;
}

IntVector sub(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw PreconditionError("vector length mismatch");
    IntVector s(a);
    for (std::size_t i = 0; i < a.size(); ++i) s[i] -= b[i];
    return s;
}

}  // namespace lpk
