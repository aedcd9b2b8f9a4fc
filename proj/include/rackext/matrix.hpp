#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace rackext {

/// Arbitrary-precision integer used for all exact arithmetic.
using Int = boost::multiprecision::cpp_int;

using IntVector = std::vector<Int>;

/// Floor-style remainder: result lies in [0, m) for m > 0. For m == 0 the
/// value is returned unchanged (the infinite cyclic case).
Int reduce_mod(const Int& value, const Int& modulus);

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(const IntVector& entries);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector column(std::size_t c) const;
    IntVector row(std::size_t r) const;

    IntMatrix transpose() const;
    bool is_zero() const;

    // Elementary operations (used by the normal form routines).
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& factor);
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& factor);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    /// Horizontal concatenation [*this | other].
    IntMatrix hconcat(const IntMatrix& other) const;
    /// Vertical concatenation.
    IntMatrix vconcat(const IntMatrix& other) const;

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& v);

/// Exact determinant of a square matrix (fraction-free Bareiss elimination).
Int determinant(const IntMatrix& m);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Narrowing conversion that throws instead of truncating.
std::int64_t to_int64(const Int& value);

}  // namespace rackext
