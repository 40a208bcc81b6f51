#include "qtorus/finite_field.hpp"

#include <vector>

namespace qtorus {

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1)
            r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % sp == 0)
            return n == sp;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f)
            continue;
        out.push_back(f);
        while (n % f == 0)
            n /= f;
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

} // namespace

std::uint64_t smallest_primitive_root(std::uint64_t p)
{
    if (!is_prime(p))
        throw InvalidPrimeError(std::to_string(p) + " is not prime");
    if (p == 2)
        return 1;
    const auto fs = prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto f : fs)
            if (powmod_u64(g, (p - 1) / f, p) == 1) {
                ok = false;
                break;
            }
        if (ok)
            return g;
    }
    throw InvariantViolation("no primitive root found");
}

std::uint64_t root_of_unity(std::uint64_t p, std::int64_t m)
{
    if (m < 1)
        throw InvalidOrderError("root of unity order must be positive");
    if (!is_prime(p))
        throw InvalidPrimeError(std::to_string(p) + " is not prime");
    if ((p - 1) % static_cast<std::uint64_t>(m) != 0)
        throw NoRootOfUnityError("F_" + std::to_string(p) + " has no element of order " + std::to_string(m) +
                                 " (need p = 1 mod m)");
    return powmod_u64(smallest_primitive_root(p), (p - 1) / static_cast<std::uint64_t>(m), p);
}

std::uint64_t smallest_prime_one_mod(std::int64_t m)
{
    if (m < 1)
        throw InvalidOrderError("root of unity order must be positive");
    const auto um = static_cast<std::uint64_t>(m);
    for (std::uint64_t p = um + 1;; p += um)
        if (is_prime(p))
            return p;
}

FpElem::FpElem(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p)
{
    if (v_ == 0)
        throw InvalidParameterError("zero is not an invertible field element");
}

FpElem operator*(const FpElem& a, const FpElem& b)
{
    if (a.modulus() != b.modulus())
        throw DimensionError("field elements over different primes");
    return FpElem(mulmod_u64(a.value(), b.value(), a.modulus()), a.modulus());
}

FpElem inverse(const FpElem& a) { return FpElem(powmod_u64(a.value(), a.modulus() - 2, a.modulus()), a.modulus()); }

FpElem power(const FpElem& a, std::int64_t e)
{
    const std::uint64_t order = a.modulus() - 1;
    const auto em = static_cast<std::uint64_t>(((e % static_cast<std::int64_t>(order)) + static_cast<std::int64_t>(order)) %
                                               static_cast<std::int64_t>(order));
    return FpElem(powmod_u64(a.value(), em, a.modulus()), a.modulus());
}

std::string to_string(const FpElem& a) { return std::to_string(a.value()); }

} // namespace qtorus
