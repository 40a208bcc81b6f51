#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "qtorus/image_kernels.hpp"

using namespace qtorus;

TEST_CASE("rank two PI degree")
{
    for (std::int64_t m = 2; m <= 12; ++m)
        for (std::int64_t r = 1; r < m; ++r) {
            const ExponentData ed{IntMatrix{{0, r}, {-r, 0}}, m};
            CHECK(pi_degree(ed) == static_cast<std::uint64_t>(m / std::gcd(r, m)));
        }
    CHECK(pi_degree({IntMatrix{{0, 4}, {-4, 0}}, 6}) == 3);
    // m | r folds the block into the center
    const auto nf = compute_normal_form({IntMatrix{{0, 6}, {-6, 0}}, 3});
    CHECK(nf.s == 0);
    CHECK(nf.crank == 2);
    CHECK(nf.central_d == std::vector<mpz_class>{6});
    CHECK(nf.dimension() == 1);
}

TEST_CASE("zero matrix and a rank-3 example")
{
    const auto z = compute_normal_form({IntMatrix(3, 3), 5});
    CHECK(z.s == 0);
    CHECK(z.crank == 3);
    CHECK(z.dimension() == 1);

    const IntMatrix h3{{0, 1, 2}, {-1, 0, 0}, {-2, 0, 0}};
    const auto nf = compute_normal_form({h3, 4});
    CHECK(nf.s == 1);
    CHECK(nf.klist == std::vector<std::int64_t>{4});
    CHECK(nf.hlist == std::vector<std::int64_t>{1});
    CHECK(nf.crank == 1);
    CHECK(nf.U.transpose() * h3 * nf.U == nf.block_matrix());
    CHECK(pi_degree({h3, 4}) == 4);
}

TEST_CASE("canonical divisor")
{
    CHECK(canonical_divisor(8, 12) == 4);
    CHECK(canonical_divisor(-3, 12) == 3);
    CHECK(canonical_divisor(0, 12) == 12);
    CHECK(canonical_divisor(mpz_class("120000000000000000000000"), 7) == canonical_divisor(mpz_class("120000000000000000000000") % 7, 7));
}

TEST_CASE("validation errors")
{
    CHECK_THROWS_AS(compute_normal_form({IntMatrix{{0, 1}, {-1, 0}}, 0}), InvalidOrderError);
    CHECK_THROWS_AS(compute_normal_form({IntMatrix{{0, 1}, {1, 0}}, 4}), ShapeError);
    CHECK_THROWS_AS(compute_normal_form({IntMatrix(2, 3), 4}), ShapeError);
}

TEST_CASE("normal form properties on random data")
{
    std::mt19937_64 rng(17);
    for (int it = 0; it < 300; ++it) {
        const std::size_t n = 1 + it % 6;
        const std::int64_t m = 1 + (it / 6) % 12;
        const auto h = oracle::random_antisymmetric(rng, n, -8, 8);
        const auto nf = compute_normal_form({h, m});
        CHECK(abs(determinant(nf.U)) == 1);
        CHECK(nf.U.transpose() * h * nf.U == nf.block_matrix());
        CHECK(2 * nf.s + nf.crank == n);
        std::uint64_t dim = 1;
        for (std::size_t i = 0; i < nf.s; ++i) {
            CHECK(nf.klist[i] >= 2);
            CHECK(nf.klist[i] * nf.hlist[i] == m);
            CHECK(nf.hlist[i] == canonical_divisor(nf.dlist[i], m));
            CHECK(order_of_qpower(nf.dlist[i], m) == nf.klist[i]);
            if (i + 1 < nf.s)
                CHECK(nf.hlist[i + 1] % nf.hlist[i] == 0);
            dim *= static_cast<std::uint64_t>(nf.klist[i]);
        }
        for (const auto& c : nf.central_d)
            CHECK(mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(m)));
        CHECK(nf.dimension() == dim);
        if (n <= 4 && m <= 8) {
            const auto img = oracle::brute_image(h, m);
            CHECK(oracle::isqrt_exact(img) == static_cast<std::int64_t>(dim));
            CHECK(image_size_bruteforce_serial(h, m) == img);
            CHECK(image_size_bruteforce_parallel(h, m) == img);
        }
        CHECK(pi_degree({h, m}) == dim);
    }
}
