#pragma once

// Simple modules M(alpha) over the quantum torus as monomial matrices.
//
// Conventions: right modules, so a matrix row is the source basis vector and
// (v A) B = v (A B). Basis tuples (a_1, ..., a_s) with 0 <= a_i < k_i are
// linearized mixed-radix: index = a_1 + k_1 (a_2 + k_2 (...)).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtorus/monomial_matrix.hpp"
#include "qtorus/normalform.hpp"
#include "qtorus/scalars.hpp"

namespace qtorus {

class BasisIndex {
public:
    BasisIndex() = default;
    explicit BasisIndex(std::vector<std::int64_t> periods);

    std::uint64_t size() const noexcept { return size_; }
    std::size_t blocks() const noexcept { return periods_.size(); }
    std::int64_t period(std::size_t i) const { return periods_[i]; }
    std::uint64_t stride(std::size_t i) const { return strides_[i]; }

    std::uint64_t encode(const std::vector<std::int64_t>& tuple) const;
    std::vector<std::int64_t> decode(std::uint64_t index) const;
    std::int64_t digit(std::uint64_t index, std::size_t i) const
    {
        return static_cast<std::int64_t>((index / strides_[i]) % static_cast<std::uint64_t>(periods_[i]));
    }
    /// Index of the tuple with a_i replaced by a_i + step (mod k_i).
    std::uint64_t shift(std::uint64_t index, std::size_t i, std::int64_t step) const;

private:
    std::vector<std::int64_t> periods_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t size_ = 1;
};

/// Modules larger than this are refused rather than allocated.
inline constexpr std::uint64_t kMaxModuleDimension = std::uint64_t{1} << 22;

template <class S>
struct SimpleModuleRep {
    TorusNormalForm nf;
    std::vector<S> alpha;
    S q;
    BasisIndex basis;
    std::vector<MonomialMatrix<S>> X; // normal-form generators X_1..X_n
    std::vector<MonomialMatrix<S>> x; // original generators, filled by pull_back

    std::uint64_t dim() const noexcept { return basis.size(); }
    S one() const { return power(q, 0); }
};

namespace detail {
void check_rep_shape(const TorusNormalForm& nf, std::size_t nalpha);
std::int64_t to_int64(const mpz_class& x, const char* what);
} // namespace detail

/// Actions on the basis vectors e(a):
///   e(a) X_i     = alpha_i e(.., a_i + 1, ..)
///   e(a) X_{i+s} = alpha_i^-1 alpha_{i+s} (q^{d_i})^{a_i - 1} e(.., a_i - 1, ..)
///   e(a) X_{2s+j} = alpha_{2s+j} e(a)
/// q must be an element of order dividing m standing for the primitive root.
template <class S>
SimpleModuleRep<S> build_generators(const TorusNormalForm& nf, std::vector<S> alpha, const S& q)
{
    detail::check_rep_shape(nf, alpha.size());
    const S one = power(q, 0);
    if (!(power(q, nf.m) == one))
        throw InvalidParameterError("q is not an m-th root of unity in the chosen scalar domain");

    SimpleModuleRep<S> rep{nf, std::move(alpha), q, BasisIndex(nf.klist), {}, {}};
    const auto& a = rep.alpha;
    const std::uint64_t dim = rep.basis.size();
    const std::size_t s = nf.s;

    for (std::size_t i = 0; i < s; ++i) {
        std::vector<std::size_t> cols(dim);
        for (std::uint64_t r = 0; r < dim; ++r)
            cols[r] = rep.basis.shift(r, i, 1);
        rep.X.emplace_back(std::move(cols), std::vector<S>(dim, a[i]));
    }
    for (std::size_t i = 0; i < s; ++i) {
        const std::int64_t k = nf.klist[i];
        const S qd = power(q, nf.block_qexp(i));
        const S base = inverse(a[i]) * a[i + s];
        // coefficient for digit a_i, exponent a_i - 1
        std::vector<S> coef;
        coef.reserve(static_cast<std::size_t>(k));
        for (std::int64_t ai = 0; ai < k; ++ai)
            coef.push_back(base * power(qd, ai - 1));
        std::vector<std::size_t> cols(dim);
        std::vector<S> vals;
        vals.reserve(dim);
        for (std::uint64_t r = 0; r < dim; ++r) {
            cols[r] = rep.basis.shift(r, i, -1);
            vals.push_back(coef[static_cast<std::size_t>(rep.basis.digit(r, i))]);
        }
        rep.X.emplace_back(std::move(cols), std::move(vals));
    }
    for (std::size_t j = 2 * s; j < nf.n; ++j)
        rep.X.push_back(MonomialMatrix<S>::scalar(dim, a[j]));
    return rep;
}

/// x_i = X_1^{c_1} ... X_n^{c_n} with c = column i of U^{-1}.
template <class S>
SimpleModuleRep<S>& pull_back(SimpleModuleRep<S>& rep)
{
    const IntMatrix uinv = inverse_unimodular(rep.nf.U);
    const S one = rep.one();
    rep.x.clear();
    for (std::size_t i = 0; i < rep.nf.n; ++i) {
        auto acc = MonomialMatrix<S>::scalar(rep.dim(), one);
        for (std::size_t j = 0; j < rep.nf.n; ++j) {
            const auto c = detail::to_int64(uinv(j, i), "pull-back exponent");
            if (c != 0)
                acc = acc * power(rep.X[j], c, one);
        }
        rep.x.push_back(std::move(acc));
    }
    return rep;
}

template <class S>
SimpleModuleRep<S> build_module(const TorusNormalForm& nf, std::vector<S> alpha, const S& q)
{
    auto rep = build_generators(nf, std::move(alpha), q);
    pull_back(rep);
    return rep;
}

/// Symbolic alpha_1..alpha_n and q.
SimpleModuleRep<AlphaMonomial> build_symbolic(const TorusNormalForm& nf);

// ---------------------------------------------------------------------------
// Relation verification.

struct RelationFailure {
    std::string family; // "X" or "x"
    std::size_t i = 0;
    std::size_t j = 0;
    std::string detail;
};

struct RelationReport {
    std::size_t checked = 0;
    std::vector<RelationFailure> failures;
    bool ok() const noexcept { return failures.empty(); }
};

namespace detail {

template <class S>
std::optional<RelationFailure> check_pair(const std::string& family, const std::vector<MonomialMatrix<S>>& mats,
                                          std::size_t i, std::size_t j, std::int64_t qexp, const S& q)
{
    try {
        const auto lhs = mats[i] * mats[j];
        const auto rhs = (mats[j] * mats[i]).scaled(power(q, qexp));
        if (lhs == rhs)
            return std::nullopt;
        return RelationFailure{family, i, j, "A_i A_j != q^" + std::to_string(qexp) + " A_j A_i"};
    } catch (const std::exception& e) {
        return RelationFailure{family, i, j, e.what()};
    }
}

template <class S>
std::vector<std::pair<std::size_t, std::size_t>> ordered_pairs(const std::vector<MonomialMatrix<S>>& mats)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t j = 0; j < mats.size(); ++j)
            if (i != j)
                out.emplace_back(i, j);
    return out;
}

} // namespace detail

/// Checks A_i A_j = q^{E_ij mod m} A_j A_i for every ordered pair i != j.
/// Reference implementation.
template <class S>
RelationReport check_commutation_serial(const std::string& family, const std::vector<MonomialMatrix<S>>& mats,
                                        const IntMatrix& exponents, std::int64_t m, const S& q)
{
    RelationReport rep;
    for (auto [i, j] : detail::ordered_pairs(mats)) {
        ++rep.checked;
        if (auto f = detail::check_pair(family, mats, i, j, mod_floor(exponents(i, j), m), q))
            rep.failures.push_back(std::move(*f));
    }
    return rep;
}

/// Same checks, one OpenMP task per pair; failures come back in pair order.
template <class S>
RelationReport check_commutation_parallel(const std::string& family, const std::vector<MonomialMatrix<S>>& mats,
                                          const IntMatrix& exponents, std::int64_t m, const S& q)
{
    const auto pairs = detail::ordered_pairs(mats);
    std::vector<std::int64_t> qexp(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p)
        qexp[p] = mod_floor(exponents(pairs[p].first, pairs[p].second), m);
    std::vector<std::optional<RelationFailure>> slot(pairs.size());
    const auto np = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t p = 0; p < np; ++p)
        slot[p] = detail::check_pair(family, mats, pairs[p].first, pairs[p].second, qexp[p], q);
    RelationReport rep;
    rep.checked = pairs.size();
    for (auto& f : slot)
        if (f)
            rep.failures.push_back(std::move(*f));
    return rep;
}

/// X_i X_{i+s} = q^{d_i} X_{i+s} X_i, all other X pairs commute, and (when
/// pulled back) x_i x_j = q^{h_ij} x_j x_i.
template <class S>
RelationReport verify_relations(const SimpleModuleRep<S>& rep, const IntMatrix& h, bool parallel = true)
{
    auto run = [&](const std::string& fam, const auto& mats, const IntMatrix& e) {
        return parallel ? check_commutation_parallel(fam, mats, e, rep.nf.m, rep.q)
                        : check_commutation_serial(fam, mats, e, rep.nf.m, rep.q);
    };
    RelationReport out = run("X", rep.X, rep.nf.block_matrix());
    if (!rep.x.empty()) {
        auto r = run("x", rep.x, h);
        out.checked += r.checked;
        for (auto& f : r.failures)
            out.failures.push_back(std::move(f));
    }
    return out;
}

} // namespace qtorus
