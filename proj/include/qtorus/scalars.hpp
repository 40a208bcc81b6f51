#pragma once

// Exact multiplicative scalars used as monomial-matrix entries.
//
// Every scalar type here is an element of an abelian group, never zero.
// Generic code (MonomialMatrix, the module builder) relies only on
//   a * b, inverse(a), power(a, e), a == b
// found by argument-dependent lookup.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qtorus/errors.hpp"

namespace qtorus {

/// Floor-style residue of a modulo m, always in [0, m). Requires m >= 1.
std::int64_t mod_floor(std::int64_t a, std::int64_t m);
std::int64_t mod_floor(const mpz_class& a, std::int64_t m);

/// a * e mod m without intermediate overflow.
std::int64_t mul_mod(std::int64_t a, std::int64_t e, std::int64_t m);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Multiplicative order of q^t where q is a primitive m-th root of unity,
/// i.e. m / gcd(t mod m, m). Throws InvalidOrderError when m < 1.
std::int64_t order_of_qpower(std::int64_t t, std::int64_t m);
std::int64_t order_of_qpower(const mpz_class& t, std::int64_t m);

/// Symbolic scalar alpha_1^{a_1} ... alpha_n^{a_n} * q^{qexp}, with q a
/// primitive m-th root of unity. qexp is kept reduced to [0, m).
class AlphaMonomial {
public:
    AlphaMonomial(std::vector<std::int64_t> avec, std::int64_t qexp, std::int64_t order);

    static AlphaMonomial identity(std::size_t n, std::int64_t order);
    /// The symbol alpha_j (0-based j).
    static AlphaMonomial alpha(std::size_t n, std::size_t j, std::int64_t order);
    static AlphaMonomial qpower(std::size_t n, std::int64_t e, std::int64_t order);

    const std::vector<std::int64_t>& avec() const noexcept { return avec_; }
    std::int64_t qexp() const noexcept { return qexp_; }
    std::int64_t order() const noexcept { return order_; }
    std::size_t rank() const noexcept { return avec_.size(); }

    bool is_identity() const noexcept;

    friend bool operator==(const AlphaMonomial&, const AlphaMonomial&) = default;

private:
    std::vector<std::int64_t> avec_;
    std::int64_t qexp_;
    std::int64_t order_;
};

/// Throws DimensionError when n or m differ.
AlphaMonomial mono_mul(const AlphaMonomial& a, const AlphaMonomial& b);
AlphaMonomial mono_pow(const AlphaMonomial& a, std::int64_t e);

inline AlphaMonomial operator*(const AlphaMonomial& a, const AlphaMonomial& b) { return mono_mul(a, b); }
inline AlphaMonomial power(const AlphaMonomial& a, std::int64_t e) { return mono_pow(a, e); }
inline AlphaMonomial inverse(const AlphaMonomial& a) { return mono_pow(a, -1); }

std::string to_string(const AlphaMonomial& a);
std::ostream& operator<<(std::ostream& os, const AlphaMonomial& a);

/// Concrete scalar c * q^{qexp}: a nonzero rational times a power of q.
/// For even m the coefficient is kept positive, so equality is exact.
class CycScalar {
public:
    CycScalar(mpq_class coeff, std::int64_t qexp, std::int64_t order);

    static CycScalar one(std::int64_t order) { return CycScalar(1, 0, order); }
    static CycScalar qpower(std::int64_t e, std::int64_t order) { return CycScalar(1, e, order); }

    const mpq_class& coeff() const noexcept { return coeff_; }
    std::int64_t qexp() const noexcept { return qexp_; }
    std::int64_t order() const noexcept { return order_; }

    friend bool operator==(const CycScalar& a, const CycScalar& b)
    {
        return a.order_ == b.order_ && a.qexp_ == b.qexp_ && a.coeff_ == b.coeff_;
    }

private:
    mpq_class coeff_;
    std::int64_t qexp_;
    std::int64_t order_;
};

CycScalar operator*(const CycScalar& a, const CycScalar& b);
CycScalar inverse(const CycScalar& a);
CycScalar power(const CycScalar& a, std::int64_t e);

std::string to_string(const CycScalar& a);
std::ostream& operator<<(std::ostream& os, const CycScalar& a);

} // namespace qtorus
