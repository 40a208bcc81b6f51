#include "qtorus/analysis.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace qtorus {

// ---------------------------------------------------------------------------
// Formal simplicity

std::uint64_t SimplicityCertificate::dim() const
{
    std::uint64_t d = 1;
    for (auto k : periods)
        d *= static_cast<std::uint64_t>(k);
    return d;
}

std::vector<std::int64_t> SimplicityCertificate::character(std::uint64_t idx) const
{
    std::vector<std::int64_t> c(periods.size());
    for (std::size_t r = 0; r < periods.size(); ++r) {
        const auto k = static_cast<std::uint64_t>(periods[r]);
        c[r] = mul_mod(block_qexp[r], static_cast<std::int64_t>(idx % k), m);
        idx /= k;
    }
    return c;
}

SimplicityCertificate formal_simplicity_certificate(const TorusNormalForm& nf)
{
    SimplicityCertificate cert;
    cert.m = nf.m;
    cert.periods = nf.klist;
    for (std::size_t r = 0; r < nf.s; ++r) {
        cert.block_qexp.push_back(nf.block_qexp(r));
        cert.block_orders.push_back(order_of_qpower(nf.dlist[r], nf.m));
    }

    // Characters factor over blocks, so joint separation is per-block
    // injectivity of a -> d_r a mod m on [0, k_r).
    cert.separated = true;
    for (std::size_t r = 0; r < nf.s && cert.separated; ++r) {
        std::vector<std::int64_t> ch;
        for (std::int64_t a = 0; a < cert.periods[r]; ++a)
            ch.push_back(mul_mod(cert.block_qexp[r], a, nf.m));
        std::sort(ch.begin(), ch.end());
        cert.separated = std::adjacent_find(ch.begin(), ch.end()) == ch.end();
    }

    const BasisIndex basis(nf.klist);
    const std::uint64_t dim = basis.size();
    cert.parent.assign(dim, dim);
    cert.via.assign(dim, 0);
    std::vector<char> seen(dim, 0);
    std::deque<std::uint64_t> queue{0};
    seen[0] = 1;
    cert.parent[0] = 0;
    std::uint64_t reached = 1;
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (std::size_t r = 0; r < nf.s; ++r) {
            const auto v = basis.shift(u, r, 1);
            if (seen[v])
                continue;
            seen[v] = 1;
            cert.parent[v] = u;
            cert.via[v] = static_cast<std::uint32_t>(r);
            ++reached;
            queue.push_back(v);
        }
    }
    cert.transitive = reached == dim;
    return cert;
}

namespace {

std::vector<std::int64_t> digit_table(const SimplicityCertificate& cert)
{
    const BasisIndex basis(cert.periods);
    const std::size_t s = cert.periods.size();
    std::vector<std::int64_t> t(basis.size() * s);
    for (std::uint64_t idx = 0; idx < basis.size(); ++idx)
        for (std::size_t r = 0; r < s; ++r)
            t[idx * s + r] = basis.digit(idx, r);
    return t;
}

bool pair_separated(const SimplicityCertificate& cert, const std::vector<std::int64_t>& digits, std::uint64_t u,
                    std::uint64_t v)
{
    const std::size_t s = cert.periods.size();
    for (std::size_t r = 0; r < s; ++r) {
        const auto diff = digits[u * s + r] - digits[v * s + r];
        if (diff != 0 && mul_mod(cert.block_qexp[r], diff, cert.m) != 0)
            return true;
    }
    return false;
}

} // namespace

std::uint64_t count_unseparated_pairs_serial(const SimplicityCertificate& cert)
{
    const auto digits = digit_table(cert);
    const std::uint64_t dim = cert.dim();
    std::uint64_t bad = 0;
    for (std::uint64_t u = 0; u < dim; ++u)
        for (std::uint64_t v = u + 1; v < dim; ++v)
            bad += pair_separated(cert, digits, u, v) ? 0 : 1;
    return bad;
}

std::uint64_t count_unseparated_pairs_parallel(const SimplicityCertificate& cert)
{
    const auto digits = digit_table(cert);
    const auto dim = static_cast<std::int64_t>(cert.dim());
    std::uint64_t bad = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : bad)
    for (std::int64_t u = 0; u < dim; ++u)
        for (std::int64_t v = u + 1; v < dim; ++v)
            bad += pair_separated(cert, digits, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v)) ? 0 : 1;
    return bad;
}

// ---------------------------------------------------------------------------
// Finite-field instantiation

FpElem evaluate(const AlphaMonomial& a, std::span<const std::uint64_t> alpha, std::uint64_t q, std::uint64_t p)
{
    if (alpha.size() != a.rank())
        throw DimensionError("evaluation point has the wrong length");
    FpElem r = power(FpElem(q, p), a.qexp());
    for (std::size_t j = 0; j < a.rank(); ++j)
        if (a.avec()[j] != 0)
            r = r * power(FpElem(alpha[j], p), a.avec()[j]);
    return r;
}

FiniteFieldFamily instantiate_finite_field(const SimpleModuleRep<AlphaMonomial>& rep, std::uint64_t p,
                                           std::uint64_t seed)
{
    FiniteFieldFamily fam;
    fam.p = p;
    fam.q = root_of_unity(p, rep.nf.m);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> nonzero(1, p - 1);
    for (std::size_t j = 0; j < rep.nf.n; ++j)
        fam.alpha.push_back(nonzero(rng));
    auto eval = [&](const AlphaMonomial& a) { return evaluate(a, fam.alpha, fam.q, p); };
    for (const auto& g : rep.X)
        fam.X.push_back(map_entries<FpElem>(g, eval));
    for (const auto& g : rep.x)
        fam.x.push_back(map_entries<FpElem>(g, eval));
    return fam;
}

// ---------------------------------------------------------------------------
// Random vector generation test

namespace {

using Vec = std::vector<std::uint64_t>;

std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    std::uint64_t s = a + b;
    return s >= p || s < a ? s - p : s;
}

std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + (p - b); }

// w[i] -= c * v[i] for from <= i < v.size(); v must vanish before `from`.
void axpy_neg(Vec& w, std::uint64_t c, const Vec& v, std::uint64_t p, std::size_t from = 0)
{
    if (c == 0)
        return;
    const std::size_t end = std::min(w.size(), v.size());
    const std::uint64_t cneg = p - c;
    if (p >> 32 == 0) {
        // Barrett reduction of w + cneg * v < 2^64
        const std::uint64_t mu = ~std::uint64_t{0} / p;
        for (std::size_t i = from; i < end; ++i) {
            const std::uint64_t x = w[i] + cneg * v[i];
            const auto qt = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * mu) >> 64);
            std::uint64_t r = x - qt * p;
            while (r >= p)
                r -= p;
            w[i] = r;
        }
        return;
    }
    for (std::size_t i = from; i < end; ++i)
        if (v[i] != 0)
            w[i] = subm(w[i], mulmod_u64(c, v[i], p), p);
}

Vec apply(const Vec& v, const MonomialMatrix<FpElem>& g, std::uint64_t p)
{
    Vec out(v.size(), 0);
    for (std::size_t r = 0; r < v.size(); ++r)
        if (v[r] != 0)
            out[g.col(r)] = mulmod_u64(v[r], g.value(r).value(), p);
    return out;
}

bool is_zero(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](std::uint64_t x) { return x == 0; });
}

// Row-echelon basis with normalized pivots; every row is zero left of its pivot.
class Echelon {
public:
    Echelon(std::size_t dim, std::uint64_t p) : p_(p), pivot_row_(dim, -1) {}

    std::size_t rank() const noexcept { return rows_.size(); }

    // Reduces w in place; returns the pivot column of the residue or -1.
    std::ptrdiff_t reduce(Vec& w) const
    {
        for (std::size_t c = 0; c < w.size(); ++c) {
            if (w[c] == 0)
                continue;
            const auto r = pivot_row_[c];
            if (r < 0)
                return static_cast<std::ptrdiff_t>(c);
            axpy_neg(w, w[c], rows_[static_cast<std::size_t>(r)], p_, c);
        }
        return -1;
    }

    // Inserts a reduced vector whose leading entry sits at column c.
    const Vec& insert(Vec w, std::size_t c)
    {
        const auto inv = powmod_u64(w[c], p_ - 2, p_);
        for (auto& x : w)
            x = mulmod_u64(x, inv, p_);
        pivot_row_[c] = static_cast<std::ptrdiff_t>(rows_.size());
        rows_.push_back(std::move(w));
        return rows_.back();
    }

private:
    std::uint64_t p_;
    std::vector<std::ptrdiff_t> pivot_row_;
    std::vector<Vec> rows_;
};

Vec random_nonzero_vector(std::size_t dim, std::uint64_t p, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::uint64_t> any(0, p - 1);
    Vec v(dim);
    do {
        for (auto& x : v)
            x = any(rng);
    } while (is_zero(v));
    return v;
}

// A random element of the algebra: sum of c_t * W_t over random short words.
struct AlgebraElement {
    std::vector<std::uint64_t> coeff;
    std::vector<MonomialMatrix<FpElem>> words;

    Vec apply_to(const Vec& v, std::uint64_t p) const
    {
        Vec out(v.size(), 0);
        for (std::size_t t = 0; t < words.size(); ++t) {
            const auto& w = words[t];
            for (std::size_t r = 0; r < v.size(); ++r)
                if (v[r] != 0) {
                    const auto c = w.col(r);
                    out[c] = addm(out[c], mulmod_u64(coeff[t], mulmod_u64(v[r], w.value(r).value(), p), p), p);
                }
        }
        return out;
    }
};

AlgebraElement random_algebra_element(const std::vector<MonomialMatrix<FpElem>>& gens, std::uint64_t p,
                                      std::mt19937_64& rng)
{
    AlgebraElement theta;
    std::uniform_int_distribution<std::uint64_t> coef(1, p - 1);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> len(1, 3);
    const std::size_t nwords = gens.size() + 6;
    for (std::size_t t = 0; t < nwords; ++t) {
        auto w = gens[pick(rng)];
        for (int l = len(rng); l > 1; --l)
            w = w * gens[pick(rng)];
        theta.words.push_back(std::move(w));
        theta.coeff.push_back(coef(rng));
    }
    return theta;
}

// An eigenvalue of theta in F_p: a root of the minimal polynomial of a random
// start vector under theta. nullopt when that polynomial has no root in F_p.
std::optional<std::uint64_t> random_eigenvalue(const AlgebraElement& theta, std::size_t dim, std::uint64_t p,
                                               std::mt19937_64& rng)
{
    Vec x = random_nonzero_vector(dim, p, rng);
    // Echelon of Krylov vectors with their combinations in terms of theta^j x.
    std::vector<Vec> rows, combs;
    std::vector<std::ptrdiff_t> pivot_row(dim, -1);
    std::vector<std::uint64_t> minpoly;

    for (std::size_t k = 0;; ++k) {
        Vec w = x;
        Vec comb(k + 1, 0);
        comb[k] = 1;
        bool inserted = false;
        for (std::size_t c = 0; c < dim; ++c) {
            if (w[c] == 0)
                continue;
            const auto r = pivot_row[c];
            if (r < 0) {
                const auto inv = powmod_u64(w[c], p - 2, p);
                for (auto& v : w)
                    v = mulmod_u64(v, inv, p);
                for (auto& v : comb)
                    v = mulmod_u64(v, inv, p);
                pivot_row[c] = static_cast<std::ptrdiff_t>(rows.size());
                rows.push_back(std::move(w));
                combs.push_back(std::move(comb));
                inserted = true;
                break;
            }
            const auto f = w[c];
            axpy_neg(w, f, rows[static_cast<std::size_t>(r)], p, c);
            axpy_neg(comb, f, combs[static_cast<std::size_t>(r)], p);
        }
        if (!inserted) {
            minpoly = std::move(comb); // sum comb_j theta^j annihilates x, comb_k = 1
            break;
        }
        x = theta.apply_to(x, p);
    }

    const std::uint64_t scan = std::min<std::uint64_t>(p, std::uint64_t{1} << 20);
    const std::uint64_t start = std::uniform_int_distribution<std::uint64_t>(0, p - 1)(rng);
    for (std::uint64_t t = 0; t < scan; ++t) {
        const std::uint64_t lambda = (start + t) % p;
        std::uint64_t val = 0;
        for (std::size_t j = minpoly.size(); j-- > 0;)
            val = addm(mulmod_u64(val, lambda, p), minpoly[j], p);
        if (val == 0)
            return lambda;
    }
    return std::nullopt;
}

// Basis of { v : v (theta - lambda) = 0 }, from the reduced row echelon form
// of (theta - lambda)^T.
std::vector<Vec> left_null_space(const AlgebraElement& theta, std::uint64_t lambda, std::size_t dim,
                                 std::uint64_t p)
{
    std::vector<Vec> a(dim, Vec(dim, 0)); // a[c][r] = (theta - lambda)[r][c]
    for (std::size_t r = 0; r < dim; ++r) {
        Vec e(dim, 0);
        e[r] = 1;
        const Vec row = theta.apply_to(e, p);
        for (std::size_t c = 0; c < dim; ++c)
            a[c][r] = row[c];
        a[r][r] = subm(a[r][r], lambda, p);
    }
    std::vector<std::ptrdiff_t> pivot_of_col(dim, -1);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < dim && rank < dim; ++c) {
        std::size_t piv = rank;
        while (piv < dim && a[piv][c] == 0)
            ++piv;
        if (piv == dim)
            continue;
        std::swap(a[piv], a[rank]);
        const auto inv = powmod_u64(a[rank][c], p - 2, p);
        for (auto& x : a[rank])
            x = mulmod_u64(x, inv, p);
        for (std::size_t r = 0; r < dim; ++r)
            if (r != rank)
                axpy_neg(a[r], a[r][c], a[rank], p, c);
        pivot_of_col[c] = static_cast<std::ptrdiff_t>(rank++);
    }
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < dim; ++f) {
        if (pivot_of_col[f] >= 0)
            continue;
        Vec v(dim, 0);
        v[f] = 1;
        for (std::size_t c = 0; c < dim; ++c)
            if (pivot_of_col[c] >= 0)
                v[c] = subm(0, a[static_cast<std::size_t>(pivot_of_col[c])][f], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

constexpr int kEigenAttempts = 32;
constexpr int kEigenSpaces = 8;

// Random vector of the smallest eigenspace seen over a few random algebra
// elements. Stops early at a one-dimensional eigenspace.
std::optional<Vec> random_eigenvector(const std::vector<MonomialMatrix<FpElem>>& gens, std::size_t dim,
                                      std::uint64_t p, std::mt19937_64& rng)
{
    std::vector<Vec> best;
    int spaces = 0;
    for (int attempt = 0; attempt < kEigenAttempts && spaces < kEigenSpaces; ++attempt) {
        const auto theta = random_algebra_element(gens, p, rng);
        const auto lambda = random_eigenvalue(theta, dim, p, rng);
        if (!lambda)
            continue;
        ++spaces;
        auto ns = left_null_space(theta, *lambda, dim, p);
        if (!ns.empty() && (best.empty() || ns.size() < best.size()))
            best = std::move(ns);
        if (best.size() == 1)
            break;
    }
    if (best.empty())
        return std::nullopt;
    std::uniform_int_distribution<std::uint64_t> any(0, p - 1);
    Vec y(dim, 0);
    while (is_zero(y))
        for (const auto& b : best) {
            const auto c = any(rng);
            for (std::size_t i = 0; i < dim; ++i)
                y[i] = addm(y[i], mulmod_u64(c, b[i], p), p);
        }
    return y;
}

struct TrialResult {
    std::size_t spanned = 0;
    bool fallback = false;
};

TrialResult run_trial(const std::vector<MonomialMatrix<FpElem>>& gens, std::size_t dim, std::uint64_t p,
                      std::uint64_t seed, std::size_t trial, VectorSource source)
{
    std::seed_seq seq{seed, static_cast<std::uint64_t>(trial)};
    std::mt19937_64 rng(seq);
    TrialResult res;
    std::optional<Vec> v;
    if (source == VectorSource::Eigenvector && !gens.empty()) {
        v = random_eigenvector(gens, dim, p, rng);
        res.fallback = !v;
    }
    if (!v)
        v = random_nonzero_vector(dim, p, rng);
    res.spanned = spin_dimension(std::move(*v), gens, p);
    return res;
}

} // namespace

std::size_t spin_dimension(std::vector<std::uint64_t> v, const std::vector<MonomialMatrix<FpElem>>& gens,
                           std::uint64_t p)
{
    const std::size_t dim = v.size();
    Echelon basis(dim, p);
    std::deque<Vec> queue;
    auto try_add = [&](Vec w) {
        const auto c = basis.reduce(w);
        if (c < 0)
            return;
        queue.push_back(basis.insert(std::move(w), static_cast<std::size_t>(c)));
    };
    for (auto& x : v)
        x %= p;
    try_add(std::move(v));
    while (!queue.empty() && basis.rank() < dim) {
        Vec u = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : gens) {
            if (g.dim() != dim)
                throw DimensionError("generator size does not match the vector");
            try_add(apply(u, g, p));
            if (basis.rank() == dim)
                break;
        }
    }
    return basis.rank();
}

GenerationReport random_vector_generation_test_serial(const std::vector<MonomialMatrix<FpElem>>& gens,
                                                      std::uint64_t p, std::size_t trials, std::uint64_t seed,
                                                      VectorSource source)
{
    GenerationReport rep;
    rep.dim = gens.empty() ? 1 : gens.front().dim();
    rep.spanned.resize(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto r = run_trial(gens, rep.dim, p, seed, t, source);
        rep.spanned[t] = r.spanned;
        rep.eigen_fallbacks += r.fallback ? 1 : 0;
    }
    rep.ok = std::all_of(rep.spanned.begin(), rep.spanned.end(), [&](std::size_t d) { return d == rep.dim; });
    return rep;
}

GenerationReport random_vector_generation_test_parallel(const std::vector<MonomialMatrix<FpElem>>& gens,
                                                        std::uint64_t p, std::size_t trials, std::uint64_t seed,
                                                        VectorSource source)
{
    GenerationReport rep;
    rep.dim = gens.empty() ? 1 : gens.front().dim();
    rep.spanned.resize(trials);
    std::vector<char> fell(trials, 0);
    std::vector<std::string> errors(trials);
    const auto nt = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < nt; ++t) {
        try {
            const auto r = run_trial(gens, rep.dim, p, seed, static_cast<std::size_t>(t), source);
            rep.spanned[t] = r.spanned;
            fell[t] = r.fallback ? 1 : 0;
        } catch (const std::exception& e) {
            errors[t] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty())
            throw DimensionError(e);
    rep.eigen_fallbacks = static_cast<std::size_t>(std::count(fell.begin(), fell.end(), 1));
    rep.ok = std::all_of(rep.spanned.begin(), rep.spanned.end(), [&](std::size_t d) { return d == rep.dim; });
    return rep;
}

// ---------------------------------------------------------------------------

std::optional<IsoWitness<AlphaMonomial>> are_isomorphic(const TorusNormalForm&, const std::vector<AlphaMonomial>&,
                                                        const std::vector<AlphaMonomial>&, const AlphaMonomial&)
{
    throw UnsupportedDomainError(
        "isomorphism needs concrete parameters with decidable equality; symbolic alpha is not supported");
}

} // namespace qtorus
