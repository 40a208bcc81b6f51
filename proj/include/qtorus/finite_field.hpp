#pragma once

// Prime-field arithmetic for the concrete instantiation oracle.

#include <cstdint>
#include <string>

#include "qtorus/errors.hpp"

namespace qtorus {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    if ((a | b) >> 32 == 0)
        return a * b % p;
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Smallest generator of the multiplicative group of F_p.
std::uint64_t smallest_primitive_root(std::uint64_t p);

/// g^((p-1)/m) for the smallest primitive root g: an element of exact
/// order m. Throws InvalidPrimeError / NoRootOfUnityError.
std::uint64_t root_of_unity(std::uint64_t p, std::int64_t m);

/// Smallest prime p with p = 1 mod m.
std::uint64_t smallest_prime_one_mod(std::int64_t m);

/// Nonzero element of F_p.
class FpElem {
public:
    FpElem(std::uint64_t value, std::uint64_t p);

    std::uint64_t value() const noexcept { return v_; }
    std::uint64_t modulus() const noexcept { return p_; }

    friend bool operator==(const FpElem&, const FpElem&) = default;

private:
    std::uint64_t v_;
    std::uint64_t p_;
};

FpElem operator*(const FpElem& a, const FpElem& b);
FpElem inverse(const FpElem& a);
FpElem power(const FpElem& a, std::int64_t e);
std::string to_string(const FpElem& a);

} // namespace qtorus
