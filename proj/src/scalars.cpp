#include "qtorus/scalars.hpp"

#include <numeric>
#include <ostream>
#include <sstream>

namespace qtorus {

std::int64_t mod_floor(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mod_floor(const mpz_class& a, std::int64_t m)
{
    mpz_class r;
    mpz_class mm(static_cast<long>(m));
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), mm.get_mpz_t());
    return r.get_si();
}

std::int64_t mul_mod(std::int64_t a, std::int64_t e, std::int64_t m)
{
    __int128 r = static_cast<__int128>(mod_floor(a, m)) * mod_floor(e, m);
    return static_cast<std::int64_t>(r % m);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("alpha exponent overflow in addition");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("alpha exponent overflow in multiplication");
    return r;
}

std::int64_t order_of_qpower(std::int64_t t, std::int64_t m)
{
    if (m < 1)
        throw InvalidOrderError("root of unity order must be positive, got " + std::to_string(m));
    std::int64_t g = std::gcd(mod_floor(t, m), m); // gcd(0, m) = m
    return m / g;
}

std::int64_t order_of_qpower(const mpz_class& t, std::int64_t m)
{
    if (m < 1)
        throw InvalidOrderError("root of unity order must be positive, got " + std::to_string(m));
    return order_of_qpower(mod_floor(t, m), m);
}

// ---------------------------------------------------------------------------

AlphaMonomial::AlphaMonomial(std::vector<std::int64_t> avec, std::int64_t qexp, std::int64_t order)
    : avec_(std::move(avec)), qexp_(0), order_(order)
{
    if (order < 1)
        throw InvalidOrderError("root of unity order must be positive, got " + std::to_string(order));
    qexp_ = mod_floor(qexp, order);
}

AlphaMonomial AlphaMonomial::identity(std::size_t n, std::int64_t order)
{
    return AlphaMonomial(std::vector<std::int64_t>(n, 0), 0, order);
}

AlphaMonomial AlphaMonomial::alpha(std::size_t n, std::size_t j, std::int64_t order)
{
    std::vector<std::int64_t> v(n, 0);
    v.at(j) = 1;
    return AlphaMonomial(std::move(v), 0, order);
}

AlphaMonomial AlphaMonomial::qpower(std::size_t n, std::int64_t e, std::int64_t order)
{
    return AlphaMonomial(std::vector<std::int64_t>(n, 0), e, order);
}

bool AlphaMonomial::is_identity() const noexcept
{
    if (qexp_ != 0)
        return false;
    for (auto x : avec_)
        if (x != 0)
            return false;
    return true;
}

AlphaMonomial mono_mul(const AlphaMonomial& a, const AlphaMonomial& b)
{
    if (a.rank() != b.rank())
        throw DimensionError("alpha monomials over different ranks: " + std::to_string(a.rank()) + " vs " +
                             std::to_string(b.rank()));
    if (a.order() != b.order())
        throw DimensionError("alpha monomials over different root orders: " + std::to_string(a.order()) +
                             " vs " + std::to_string(b.order()));
    std::vector<std::int64_t> v(a.rank());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = checked_add(a.avec()[i], b.avec()[i]);
    // both qexp already in [0, m)
    std::int64_t e = a.qexp() + b.qexp();
    if (e >= a.order())
        e -= a.order();
    return AlphaMonomial(std::move(v), e, a.order());
}

AlphaMonomial mono_pow(const AlphaMonomial& a, std::int64_t e)
{
    std::vector<std::int64_t> v(a.rank());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = checked_mul(a.avec()[i], e);
    return AlphaMonomial(std::move(v), mul_mod(a.qexp(), e, a.order()), a.order());
}

std::string to_string(const AlphaMonomial& a)
{
    std::ostringstream os;
    bool any = false;
    for (std::size_t j = 0; j < a.rank(); ++j) {
        auto e = a.avec()[j];
        if (e == 0)
            continue;
        if (any)
            os << '*';
        os << "a" << (j + 1);
        if (e != 1)
            os << '^' << e;
        any = true;
    }
    if (a.qexp() != 0 || !any) {
        if (any)
            os << '*';
        os << "q^" << a.qexp();
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const AlphaMonomial& a) { return os << to_string(a); }

// ---------------------------------------------------------------------------

CycScalar::CycScalar(mpq_class coeff, std::int64_t qexp, std::int64_t order)
    : coeff_(std::move(coeff)), qexp_(0), order_(order)
{
    if (order < 1)
        throw InvalidOrderError("root of unity order must be positive, got " + std::to_string(order));
    if (coeff_.get_den() == 0)
        throw InvalidParameterError("scalar with zero denominator");
    coeff_.canonicalize();
    if (coeff_ == 0)
        throw InvalidParameterError("zero is not an invertible scalar");
    // q^{m/2} = -1 for even m
    if (order % 2 == 0 && coeff_ < 0) {
        coeff_ = -coeff_;
        qexp = mod_floor(qexp, order) + order / 2;
    }
    qexp_ = mod_floor(qexp, order);
}

CycScalar operator*(const CycScalar& a, const CycScalar& b)
{
    if (a.order() != b.order())
        throw DimensionError("scalars over different root orders");
    return CycScalar(a.coeff() * b.coeff(), a.qexp() + b.qexp(), a.order());
}

CycScalar inverse(const CycScalar& a)
{
    mpq_class inv = 1 / a.coeff();
    return CycScalar(inv, -a.qexp(), a.order());
}

CycScalar power(const CycScalar& a, std::int64_t e)
{
    mpq_class base = e < 0 ? mpq_class(1 / a.coeff()) : a.coeff();
    unsigned long ue = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), ue);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), ue);
    mpq_class c(num, den);
    return CycScalar(c, mul_mod(a.qexp(), e, a.order()), a.order());
}

std::string to_string(const CycScalar& a)
{
    std::ostringstream os;
    os << a.coeff().get_str();
    if (a.qexp() != 0)
        os << "*q^" << a.qexp();
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycScalar& a) { return os << to_string(a); }

} // namespace qtorus
