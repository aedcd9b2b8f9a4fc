#include "rackext/matrix.hpp"

#include "rackext/error.hpp"

#include <limits>
#include <ostream>
#include <utility>

namespace rackext {

Int reduce_mod(const Int& value, const Int& modulus) {
    if (modulus == 0) return value;
    Int r = value % modulus;
    if (r < 0) r += modulus;
    return r;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw MalformedInput("ragged matrix literal");
        for (long long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& entries) {
    IntMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw MalformedInput("matrix row has wrong length");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

IntVector IntMatrix::column(std::size_t c) const {
    IntVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
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

bool IntMatrix::is_zero() const {
    for (const auto& v : data_)
        if (v != 0) return false;
    return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& factor) {
    if (factor == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) {
        const Int& s = (*this)(src, c);
        if (s != 0) (*this)(dst, c) += factor * s;
    }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& factor) {
    if (factor == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) {
        const Int& s = (*this)(r, src);
        if (s != 0) (*this)(r, dst) += factor * s;
    }
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix IntMatrix::hconcat(const IntMatrix& other) const {
    if (other.rows_ != rows_) throw MalformedInput("hconcat: row counts differ");
    IntMatrix out(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
        for (std::size_t c = 0; c < other.cols_; ++c) out(r, cols_ + c) = other(r, c);
    }
    return out;
}

IntMatrix IntMatrix::vconcat(const IntMatrix& other) const {
    if (other.cols_ != cols_) throw MalformedInput("vconcat: column counts differ");
    IntMatrix out(rows_ + other.rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t r = 0; r < other.rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(rows_ + r, c) = other(r, c);
    return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw MalformedInput("matrix product: inner dimensions differ");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Int& bkj = b(k, j);
                if (bkj != 0) out(i, j) += aik * bkj;
            }
        }
    return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw MalformedInput("matrix sum: shapes differ");
    IntMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
    return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw MalformedInput("matrix difference: shapes differ");
    IntMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
    return out;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
    if (a.cols() != v.size()) throw MalformedInput("matrix-vector product: length mismatch");
    IntVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a(i, k) != 0 && v[k] != 0) out[i] += a(i, k) * v[k];
    return out;
}

Int determinant(const IntMatrix& input) {
    if (input.rows() != input.cols()) throw MalformedInput("determinant of non-square matrix");
    const std::size_t n = input.rows();
    if (n == 0) return 1;
    IntMatrix m = input;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << (r ? ",[" : "[");
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(r, c);
        os << ']';
    }
    return os << ']';
}

std::int64_t to_int64(const Int& value) {
    if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min())
        throw CapExceeded("integer does not fit in 64 bits: " + value.str());
    return static_cast<std::int64_t>(value);
}

}  // namespace rackext
