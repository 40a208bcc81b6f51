#include <doctest.h>

#include <set>

#include "oracles.hpp"

using namespace qtorus;

namespace {

const IntMatrix kRank3{{0, 1, 2}, {-1, 0, 0}, {-2, 0, 0}};

TorusNormalForm nf_of(const IntMatrix& h, std::int64_t m) { return compute_normal_form({h, m}); }

// x1 x2 = q x2 x1, x3 x4 = q^2 x4 x3 over m = 6: k = (6, 3)
const IntMatrix kTwoBlocks{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 2}, {0, 0, -2, 0}};

} // namespace

TEST_CASE("formal simplicity certificate")
{
    const auto zero = formal_simplicity_certificate(nf_of(IntMatrix(3, 3), 5));
    CHECK(zero.dim() == 1);
    CHECK(zero.ok());

    const auto one = formal_simplicity_certificate(nf_of(IntMatrix{{0, 1}, {-1, 0}}, 4));
    CHECK(one.periods == std::vector<std::int64_t>{4});
    std::set<std::vector<std::int64_t>> chars;
    for (std::uint64_t a = 0; a < 4; ++a)
        chars.insert(one.character(a));
    CHECK(chars.size() == 4);

    const auto two = formal_simplicity_certificate(nf_of(IntMatrix{{0, 3, 0, 0}, {-3, 0, 0, 0}, {0, 0, 0, 2}, {0, 0, -2, 0}}, 6));
    CHECK(two.dim() == 6);
    std::set<std::vector<std::int64_t>> c2;
    for (std::uint64_t a = 0; a < two.dim(); ++a)
        c2.insert(two.character(a));
    CHECK(c2.size() == 6);
    CHECK(two.ok());
    CHECK(count_unseparated_pairs_serial(two) == 0);
    CHECK(count_unseparated_pairs_parallel(two) == 0);

    std::mt19937_64 rng(31);
    for (int it = 0; it < 60; ++it) {
        const auto nf = nf_of(oracle::random_antisymmetric(rng, 2 + it % 5, -8, 8), 2 + it % 11);
        if (nf.dimension() > 3000)
            continue;
        const auto cert = formal_simplicity_certificate(nf);
        CHECK(cert.ok());
        CHECK(cert.block_orders == cert.periods);
        CHECK(count_unseparated_pairs_parallel(cert) == 0);
    }
}

TEST_CASE("a broken certificate is reported")
{
    auto cert = formal_simplicity_certificate(nf_of(IntMatrix{{0, 1}, {-1, 0}}, 4));
    // q^2 has order 2, not 4: {0,2} and {1,3} share characters
    cert.block_qexp = {2};
    CHECK(count_unseparated_pairs_serial(cert) == 2);
    CHECK(count_unseparated_pairs_parallel(cert) == 2);
}

TEST_CASE("finite field instantiation")
{
    const auto rep = build_symbolic(nf_of(kRank3, 4));
    const auto fam = instantiate_finite_field(rep, 13, 1);
    CHECK(fam.q == root_of_unity(13, 4));
    CHECK(powmod_u64(fam.q, 2, 13) == 12);
    CHECK(fam.alpha.size() == 3);
    for (auto a : fam.alpha)
        CHECK((a >= 1 && a < 13));
    CHECK(instantiate_finite_field(rep, 13, 1).alpha == fam.alpha);
    CHECK_THROWS_AS(instantiate_finite_field(rep, 7, 1), NoRootOfUnityError);
    CHECK_THROWS_AS(instantiate_finite_field(rep, 21, 1), InvalidPrimeError);

    const std::vector<std::uint64_t> al{2, 3};
    CHECK(evaluate(AlphaMonomial({1, -1}, 1, 4), al, 5, 13).value() == 2 * 9 * 5 % 13);

    // evaluated matrices still satisfy the relations with q in F_p
    const auto r = check_commutation_serial("x", fam.x, kRank3, 4, FpElem(fam.q, 13));
    CHECK(r.ok());
}

TEST_CASE("generation test on simple modules")
{
    const auto one = build_symbolic(nf_of(IntMatrix(2, 2), 3));
    const auto f1 = instantiate_finite_field(one, 7, 2);
    CHECK(random_vector_generation_test(f1.x, 7, 5, 1).ok);

    std::mt19937_64 rng(37);
    for (int it = 0; it < 12; ++it) {
        const std::int64_t m = 2 + it % 6;
        const auto nf = nf_of(oracle::random_antisymmetric(rng, 2 + it % 4, -5, 5), m);
        if (nf.dimension() > 200)
            continue;
        const auto p = smallest_prime_one_mod(m);
        const auto fam = instantiate_finite_field(build_symbolic(nf), p, static_cast<std::uint64_t>(it));
        for (auto src : {VectorSource::Eigenvector, VectorSource::Uniform}) {
            const auto g = random_vector_generation_test(fam.x, p, 6, 5, src);
            CHECK(g.ok);
            CHECK(g.spanned == std::vector<std::size_t>(6, fam.dim()));
        }
        CHECK(random_vector_generation_test_serial(fam.x, p, 4, 9).spanned ==
              random_vector_generation_test_parallel(fam.x, p, 4, 9).spanned);
    }
}

TEST_CASE("generation test rejects a direct sum")
{
    const auto nf = nf_of(kTwoBlocks, 6);
    const auto p = smallest_prime_one_mod(6);
    const auto fam = instantiate_finite_field(build_symbolic(nf), p, 3);
    const auto sum = oracle::direct_sum(fam.x, fam.x);
    const std::size_t d = fam.dim();

    const auto eig = random_vector_generation_test(sum, p, 50, 4, VectorSource::Eigenvector);
    CHECK_FALSE(eig.ok);
    CHECK(eig.eigen_fallbacks == 0);
    for (auto s : eig.spanned)
        CHECK(s == d);

    // a uniformly random vector of M (+) M is almost always cyclic
    const auto uni = random_vector_generation_test(sum, p, 20, 4, VectorSource::Uniform);
    CHECK(uni.spanned == std::vector<std::size_t>(20, 2 * d));

    std::vector<std::uint64_t> e0(2 * d, 0);
    e0[0] = 1;
    CHECK(spin_dimension(e0, sum, p) == d);
    CHECK(spin_dimension(std::vector<std::uint64_t>(2 * d, 0), sum, p) == 0);
}

TEST_CASE("isomorphism examples")
{
    const IntMatrix h{{0, 1}, {-1, 0}};
    const auto nf = nf_of(h, 4);
    const auto q = CycScalar::qpower(1, 4);
    const std::vector<CycScalar> a{CycScalar(2, 0, 4), CycScalar(3, 1, 4)};

    const auto same = are_isomorphic(nf, a, a, q);
    REQUIRE(same);
    CHECK(same->r == std::vector<std::int64_t>{0});
    const auto id = build_intertwiner(nf, a, a, *same, q);
    CHECK(id == MonomialMatrix<CycScalar>::scalar(4, CycScalar::one(4)));

    const std::vector<CycScalar> b{a[0], a[1] * inverse(power(q, nf.block_qexp(0)))};
    const auto w = are_isomorphic(nf, a, b, q);
    REQUIRE(w);
    CHECK(w->r == std::vector<std::int64_t>{1});
    const auto shift = build_intertwiner(nf, a, b, *w, q);
    for (std::size_t r = 0; r < 4; ++r) {
        CHECK(shift.col(r) == (r + 1) % 4);
        CHECK(shift.value(r) == CycScalar::one(4));
    }

    // alpha_1 -> i * alpha_1 keeps alpha_1^4
    const std::vector<CycScalar> c{a[0] * q, a[1]};
    CHECK(are_isomorphic(nf, a, c, q));
    const std::vector<CycScalar> bad{a[0] * CycScalar(2, 0, 4), a[1]};
    CHECK_FALSE(are_isomorphic(nf, a, bad, q));

    const auto cnf = nf_of(kRank3, 4);
    const std::vector<CycScalar> a3{CycScalar(1, 0, 4), CycScalar(1, 0, 4), CycScalar(5, 0, 4)};
    const std::vector<CycScalar> b3{a3[0], a3[1], CycScalar(7, 0, 4)};
    CHECK_FALSE(are_isomorphic(cnf, a3, b3, q));

    const std::vector<AlphaMonomial> sa(2, AlphaMonomial::identity(2, 4));
    CHECK_THROWS_AS(are_isomorphic(nf, sa, sa, AlphaMonomial::qpower(2, 1, 4)), UnsupportedDomainError);
    CHECK_THROWS_AS(are_isomorphic(nf, a, a3, q), DimensionError);
}

TEST_CASE("isomorphism is an equivalence relation")
{
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> coin(0, 3);
    for (int it = 0; it < 60; ++it) {
        const std::int64_t m = 2 + it % 7;
        const auto h = oracle::random_antisymmetric(rng, 2 + it % 4, -5, 5);
        const auto nf = nf_of(h, m);
        if (nf.dimension() > 400)
            continue;
        const auto q = CycScalar::qpower(1, m);
        const auto a = oracle::random_alpha(rng, nf.n, m);
        auto perturb = [&](std::vector<CycScalar> v) {
            for (std::size_t i = 0; i < nf.s; ++i) {
                v[i] = v[i] * power(q, nf.hlist[i] * coin(rng));
                v[i + nf.s] = v[i + nf.s] * power(q, nf.block_qexp(i) * coin(rng));
            }
            return v;
        };
        const auto b = perturb(a);
        const auto c = perturb(b);
        const auto ab = are_isomorphic(nf, a, b, q);
        const auto ba = are_isomorphic(nf, b, a, q);
        const auto bc = are_isomorphic(nf, b, c, q);
        const auto ac = are_isomorphic(nf, a, c, q);
        REQUIRE(ab);
        REQUIRE(ba);
        REQUIRE(bc);
        REQUIRE(ac);
        CHECK(are_isomorphic(nf, a, a, q));
        for (std::size_t i = 0; i < nf.s; ++i) {
            const auto k = nf.klist[i];
            CHECK((ab->r[i] + ba->r[i]) % k == 0);
            CHECK((ab->r[i] + bc->r[i]) % k == ac->r[i]);
        }
        const auto phi = build_intertwiner(nf, a, b, *ab, q);
        CHECK(phi * phi.inverse() == MonomialMatrix<CycScalar>::scalar(phi.dim(), CycScalar::one(m)));
    }
}

TEST_CASE("non-isomorphic pairs have no monomial intertwiner")
{
    const IntMatrix h{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}};
    const auto nf = nf_of(h, 3);
    const auto q = CycScalar::qpower(1, 3);
    const std::vector<CycScalar> a{CycScalar(2, 0, 3), CycScalar(3, 0, 3), CycScalar(5, 0, 3)};
    const std::vector<CycScalar> b{CycScalar(2, 1, 3), CycScalar(3, 2, 3), CycScalar(5, 0, 3)};
    const auto ma = build_module(nf, a, q);
    REQUIRE(are_isomorphic(nf, a, b, q));
    CHECK(oracle::monomial_intertwiner_targets(ma.X, build_module(nf, b, q).X).size() == 1);

    const std::vector<CycScalar> c{CycScalar(3, 0, 3), a[1], a[2]};
    CHECK_FALSE(are_isomorphic(nf, a, c, q));
    CHECK(oracle::monomial_intertwiner_targets(ma.X, build_module(nf, c, q).X).empty());
}

TEST_CASE("zero support reduction")
{
    const ExponentData ed{kRank3, 4};
    using Opt = std::optional<CycScalar>;
    const auto full = reduce_zero_support(ed, std::vector<Opt>(3, CycScalar::one(4)));
    CHECK(full.ed.H == kRank3);
    CHECK(full.kept == std::vector<std::size_t>{0, 1, 2});

    const auto none = reduce_zero_support(ed, std::vector<Opt>(3));
    CHECK(none.ed.n() == 0);
    CHECK(build_symbolic(compute_normal_form(none.ed)).dim() == 1);

    const auto single = reduce_zero_support(ed, std::vector<Opt>{Opt{}, CycScalar::one(4), Opt{}});
    CHECK(single.ed.n() == 1);
    CHECK(compute_normal_form(single.ed).dimension() == 1);

    const auto two = reduce_zero_support(ed, std::vector<Opt>{CycScalar::one(4), Opt{}, CycScalar::one(4)});
    CHECK(two.ed.H == IntMatrix{{0, 2}, {-2, 0}});
    CHECK(compute_normal_form(two.ed).dimension() == 2);

    CHECK_THROWS_AS(reduce_zero_support(ed, std::vector<Opt>(2)), DimensionError);
}
