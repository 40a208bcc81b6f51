#pragma once

// Integer lattice linear algebra over arbitrary-precision integers:
// Smith normal form, alternating (skew) normal form under unimodular
// congruence, and the cardinality of the image of a matrix modulo m.

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include <gmpxx.h>

#include "qtorus/errors.hpp"

namespace qtorus {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows);
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transpose() const;
    bool is_zero() const;
    /// H^T = -H with zero diagonal.
    bool is_antisymmetric() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row dst += c * row src
    void add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& c);
    /// col dst += c * col src
    void add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& c);

    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpz_class> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a);
std::ostream& operator<<(std::ostream& os, const IntMatrix& a);

/// Exact determinant (fraction-free Bareiss elimination).
mpz_class determinant(const IntMatrix& a);

/// Inverse of a unimodular matrix; throws InvariantViolation if |det| != 1.
IntMatrix inverse_unimodular(const IntMatrix& u);

struct SmithResult {
    IntMatrix S; // diagonal, non-negative, s_1 | s_2 | ...
    IntMatrix U; // unimodular, rows x rows
    IntMatrix V; // unimodular, cols x cols
};

/// U * A * V = S.
SmithResult smith_normal_form(const IntMatrix& a);

/// The min(rows, cols) diagonal entries of the Smith form.
std::vector<mpz_class> smith_divisors(const IntMatrix& a);

struct SkewNormalCertificate {
    IntMatrix U;                 // unimodular
    std::vector<mpz_class> dlist; // positive, d_1 | d_2 | ...
    std::size_t zrank = 0;        // 2 * dlist.size() + zrank = n

    /// The block-diagonal matrix U^T H U is expected to equal:
    /// [[0, d_i], [-d_i, 0]] blocks followed by a zrank x zrank zero block.
    IntMatrix block_matrix() const;
};

/// Unimodular congruence to alternating normal form. Throws ShapeError on
/// non-antisymmetric input.
SkewNormalCertificate skew_normal_form(const IntMatrix& h);

/// Replays the three certificate invariants against H; returns true when
/// all hold exactly.
bool check_certificate(const IntMatrix& h, const SkewNormalCertificate& cert);

/// |image of Z^n -> Z^n -> (Z/mZ)^n| = prod_i m / gcd(s_i, m) over the n Smith
/// divisors (zero-padded). Throws InvalidOrderError if m < 1.
mpz_class image_size_mod_m(const IntMatrix& h, std::int64_t m);

/// gcd of all entries (0 for the zero matrix).
mpz_class entry_gcd(const IntMatrix& a);

/// Integer square root; throws InvariantViolation when x is not a perfect square.
mpz_class exact_isqrt(const mpz_class& x);

} // namespace qtorus
