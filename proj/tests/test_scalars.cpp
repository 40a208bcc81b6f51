#include <doctest.h>

#include <random>

#include "qtorus/finite_field.hpp"
#include "qtorus/scalars.hpp"

using namespace qtorus;

namespace {

std::int64_t brute_order(std::int64_t t, std::int64_t m)
{
    for (std::int64_t k = 1;; ++k)
        if (((k * t) % m + m) % m == 0)
            return k;
}

bool trial_division_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

} // namespace

TEST_CASE("order of q^t")
{
    CHECK(order_of_qpower(4, 6) == 3);
    CHECK(order_of_qpower(0, 5) == 1);
    for (std::int64_t m = 1; m <= 12; ++m)
        for (std::int64_t t = -20; t <= 20; ++t)
            CHECK(order_of_qpower(t, m) == brute_order(t, m));
    CHECK(order_of_qpower(mpz_class("12000000000000000000000006"), 12) == order_of_qpower(6, 12));
    CHECK_THROWS_AS(order_of_qpower(1, 0), InvalidOrderError);
}

TEST_CASE("alpha monomials")
{
    const AlphaMonomial a({0, 1}, 3, 4);
    CHECK(power(a, 2) == AlphaMonomial({0, 2}, 2, 4));
    CHECK(power(AlphaMonomial({0}, 4, 6), 3).is_identity());
    CHECK(a * inverse(a) == AlphaMonomial::identity(2, 4));
    CHECK(AlphaMonomial::qpower(1, -1, 5).qexp() == 4);
    CHECK(to_string(AlphaMonomial({2, 0, -1}, 3, 5)) == "a1^2*a3^-1*q^3");
    CHECK_THROWS_AS(AlphaMonomial({1}, 0, 4) * AlphaMonomial({1, 0}, 0, 4), DimensionError);
    CHECK_THROWS_AS(AlphaMonomial({1}, 0, 4) * AlphaMonomial({1}, 0, 6), DimensionError);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int it = 0; it < 200; ++it) {
        const AlphaMonomial x({d(rng), d(rng), d(rng)}, d(rng), 7);
        const AlphaMonomial y({d(rng), d(rng), d(rng)}, d(rng), 7);
        const int e1 = d(rng), e2 = d(rng);
        CHECK(power(x, e1 + e2) == power(x, e1) * power(x, e2));
        CHECK(x * y == y * x);
        CHECK(power(x * y, e1) == power(x, e1) * power(y, e1));
    }
}

TEST_CASE("cyclotomic scalars")
{
    CHECK_THROWS_AS(CycScalar(0, 1, 4), InvalidParameterError);
    CHECK_THROWS_AS(CycScalar(1, 0, 0), InvalidOrderError);
    const CycScalar c(mpq_class(3, 2), 1, 6);
    CHECK(c * inverse(c) == CycScalar::one(6));
    CHECK(power(c, -3) == inverse(power(c, 3)));
    CHECK(power(c, 0) == CycScalar::one(6));
    // q^{m/2} = -1 when m is even; -1 is not a power of q when m is odd
    CHECK(CycScalar(-1, 0, 4) == CycScalar::qpower(2, 4));
    CHECK(power(CycScalar::qpower(1, 6), 3) == CycScalar(-1, 0, 6));
    for (std::int64_t e = 0; e < 5; ++e)
        CHECK_FALSE(CycScalar(-1, 0, 5) == CycScalar::qpower(e, 5));
    CHECK(power(CycScalar(2, 0, 3), 62) == CycScalar(mpq_class(mpz_class(1) << 62), 0, 3));
    CHECK(to_string(CycScalar(mpq_class(-2, 3), 1, 5)) == "-2/3*q^1");
}

TEST_CASE("finite field helpers")
{
    for (std::uint64_t n = 0; n < 5000; ++n)
        CHECK(is_prime(n) == trial_division_prime(n));
    CHECK(is_prime(18446744073709551557ULL));
    CHECK_FALSE(is_prime(18446744073709551557ULL - 2));

    for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 13ULL, 41ULL, 97ULL}) {
        const auto g = smallest_primitive_root(p);
        std::uint64_t k = 1, x = g;
        while (x != 1) {
            x = x * g % p;
            ++k;
        }
        CHECK(k == p - 1);
    }

    CHECK(powmod_u64(5, 2, 13) == 12);
    CHECK(powmod_u64(5, 4, 13) == 1);
    const auto q = root_of_unity(13, 4);
    CHECK(powmod_u64(q, 4, 13) == 1);
    CHECK(powmod_u64(q, 2, 13) != 1);
    CHECK_THROWS_AS(root_of_unity(7, 4), NoRootOfUnityError);
    CHECK_THROWS_AS(root_of_unity(15, 2), InvalidPrimeError);
    for (std::int64_t m = 1; m <= 30; ++m) {
        const auto p = smallest_prime_one_mod(m);
        CHECK(is_prime(p));
        CHECK((p - 1) % static_cast<std::uint64_t>(m) == 0);
    }

    const FpElem a(7, 13);
    CHECK((a * inverse(a)).value() == 1);
    CHECK(power(a, -1) == inverse(a));
    CHECK_THROWS_AS(FpElem(0, 13), InvalidParameterError);
}
