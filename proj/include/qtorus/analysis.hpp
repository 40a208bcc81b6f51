#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qtorus/finite_field.hpp"
#include "qtorus/repbuild.hpp"

namespace qtorus {

// ---------------------------------------------------------------------------
// Formal simplicity.
//
// Separation: the joint character of e(a) under the diagonal operators
// X_r X_{r+s} is (d_r a_r mod m)_r, up to the common alpha_{r+s} factors,
// which cancel in any comparison. Distinct tuples must give distinct
// characters. Transitivity: X_1..X_s reach every tuple from e(0,..,0).

struct SimplicityCertificate {
    std::int64_t m = 1;
    std::vector<std::int64_t> periods;      // k_r
    std::vector<std::int64_t> block_qexp;   // d_r mod m
    std::vector<std::int64_t> block_orders; // ord(q^{d_r}), must equal k_r
    bool separated = false;
    bool transitive = false;
    // BFS spanning tree from index 0: parent[idx] and the block whose X moved it.
    std::vector<std::uint64_t> parent;
    std::vector<std::uint32_t> via;

    std::uint64_t dim() const;
    bool ok() const noexcept { return separated && transitive; }
    /// q-exponent of the r-th character coordinate of basis index idx.
    std::vector<std::int64_t> character(std::uint64_t idx) const;
};

SimplicityCertificate formal_simplicity_certificate(const TorusNormalForm& nf);

/// Exhaustive O(D^2) pair check: every pair of distinct tuples has a block r
/// with q^{d_r (a_r - b_r)} != 1. Returns the number of unseparated pairs.
std::uint64_t count_unseparated_pairs_serial(const SimplicityCertificate& cert);
std::uint64_t count_unseparated_pairs_parallel(const SimplicityCertificate& cert);

// ---------------------------------------------------------------------------
// Finite-field instantiation.

struct FiniteFieldFamily {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> alpha;
    std::vector<MonomialMatrix<FpElem>> X;
    std::vector<MonomialMatrix<FpElem>> x;

    std::size_t dim() const { return X.empty() ? 1 : X.front().dim(); }
};

FpElem evaluate(const AlphaMonomial& a, std::span<const std::uint64_t> alpha, std::uint64_t q, std::uint64_t p);

/// q -> g^((p-1)/m) for the smallest primitive root g, alpha_i -> seeded
/// random nonzero elements.
FiniteFieldFamily instantiate_finite_field(const SimpleModuleRep<AlphaMonomial>& rep, std::uint64_t p,
                                           std::uint64_t seed);

enum class VectorSource {
    // Uniformly random nonzero vector.
    Uniform,
    // Random vector of an eigenspace of a random algebra element, taking the
    // smallest eigenspace over a few elements (MeatAxe-style). When that
    // eigenspace is one-dimensional in M, such a vector never generates M (+) M.
    Eigenvector,
};

struct GenerationReport {
    std::size_t dim = 0;
    std::vector<std::size_t> spanned; // per trial
    std::size_t eigen_fallbacks = 0;  // trials that fell back to a uniform vector
    bool ok = false;
};

/// For each trial, spins a random nonzero vector under the generators and
/// records the dimension of the submodule it generates; ok iff every trial
/// reaches the full dimension.
GenerationReport random_vector_generation_test_serial(const std::vector<MonomialMatrix<FpElem>>& gens,
                                                      std::uint64_t p, std::size_t trials, std::uint64_t seed,
                                                      VectorSource source = VectorSource::Eigenvector);
GenerationReport random_vector_generation_test_parallel(const std::vector<MonomialMatrix<FpElem>>& gens,
                                                        std::uint64_t p, std::size_t trials, std::uint64_t seed,
                                                        VectorSource source = VectorSource::Eigenvector);
inline GenerationReport random_vector_generation_test(const std::vector<MonomialMatrix<FpElem>>& gens,
                                                      std::uint64_t p, std::size_t trials, std::uint64_t seed,
                                                      VectorSource source = VectorSource::Eigenvector)
{
    return random_vector_generation_test_parallel(gens, p, trials, seed, source);
}

/// Dimension of the submodule generated by v (dense, entries mod p).
std::size_t spin_dimension(std::vector<std::uint64_t> v, const std::vector<MonomialMatrix<FpElem>>& gens,
                           std::uint64_t p);

// ---------------------------------------------------------------------------
// Isomorphism.

template <class S>
struct IsoWitness {
    std::vector<std::int64_t> r; // r_i in Z/k_i
    std::vector<S> scale;        // beta_i / alpha_i
};

namespace detail {
inline void check_iso_args(const TorusNormalForm& nf, std::size_t na, std::size_t nb)
{
    if (na != nf.n || nb != nf.n)
        throw DimensionError("parameter lists must have length " + std::to_string(nf.n));
}
} // namespace detail

/// Decides M(alpha) ~ M(beta):
///   alpha_i^{k_i} = beta_i^{k_i}, alpha_{i+s} = beta_{i+s} (q^{d_i})^{r_i},
///   alpha_{2s+j} = beta_{2s+j}.
/// r_i is found by scanning all k_i residues.
template <class S>
std::optional<IsoWitness<S>> are_isomorphic(const TorusNormalForm& nf, const std::vector<S>& alpha,
                                            const std::vector<S>& beta, const S& q)
{
    detail::check_iso_args(nf, alpha.size(), beta.size());
    const std::size_t s = nf.s;
    IsoWitness<S> w;
    for (std::size_t i = 0; i < s; ++i) {
        const auto k = nf.klist[i];
        if (!(power(alpha[i], k) == power(beta[i], k)))
            return std::nullopt;
        const S qd = power(q, nf.block_qexp(i));
        const S ratio = alpha[i + s] * inverse(beta[i + s]);
        std::optional<std::int64_t> found;
        S cur = power(q, 0);
        for (std::int64_t r = 0; r < k; ++r) {
            if (cur == ratio) {
                found = r;
                break;
            }
            cur = cur * qd;
        }
        if (!found)
            return std::nullopt;
        w.r.push_back(*found);
        w.scale.push_back(beta[i] * inverse(alpha[i]));
    }
    for (std::size_t j = 2 * s; j < nf.n; ++j)
        if (!(alpha[j] == beta[j]))
            return std::nullopt;
    return w;
}

/// Symbolic parameters have no decidable coset test.
std::optional<IsoWitness<AlphaMonomial>> are_isomorphic(const TorusNormalForm& nf,
                                                        const std::vector<AlphaMonomial>& alpha,
                                                        const std::vector<AlphaMonomial>& beta,
                                                        const AlphaMonomial& q);

/// A_g * Phi == Phi * B_g for every generator (right-module map M(a) -> M(b)).
template <class S>
bool intertwines(const MonomialMatrix<S>& phi, const std::vector<MonomialMatrix<S>>& a,
                 const std::vector<MonomialMatrix<S>>& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t g = 0; g < a.size(); ++g)
        if (!(a[g] * phi == phi * b[g]))
            return false;
    return true;
}

/// phi(e(a)) = prod_i (beta_i / alpha_i)^{a_i} e(a + r), verified against
/// both generator families before returning.
template <class S>
MonomialMatrix<S> build_intertwiner(const TorusNormalForm& nf, const std::vector<S>& alpha,
                                    const std::vector<S>& beta, const IsoWitness<S>& w, const S& q)
{
    detail::check_iso_args(nf, alpha.size(), beta.size());
    if (w.r.size() != nf.s || w.scale.size() != nf.s)
        throw DimensionError("witness does not match the number of blocks");
    const BasisIndex basis(nf.klist);
    const S one = power(q, 0);
    std::vector<std::size_t> cols(basis.size());
    std::vector<S> vals;
    vals.reserve(basis.size());
    for (std::uint64_t idx = 0; idx < basis.size(); ++idx) {
        S c = one;
        std::uint64_t target = idx;
        for (std::size_t i = 0; i < nf.s; ++i) {
            c = c * power(w.scale[i], basis.digit(idx, i));
            target = basis.shift(target, i, w.r[i]);
        }
        cols[idx] = target;
        vals.push_back(c);
    }
    MonomialMatrix<S> phi(std::move(cols), std::move(vals));

    const auto ma = build_module(nf, alpha, q);
    const auto mb = build_module(nf, beta, q);
    if (!intertwines(phi, ma.X, mb.X) || !intertwines(phi, ma.x, mb.x))
        throw InvariantViolation("constructed intertwiner does not commute with the generator action");
    return phi;
}

// ---------------------------------------------------------------------------
// Zero-support reduction.

template <class S>
struct ZeroSupportReduction {
    ExponentData ed;
    std::vector<S> alpha;
    std::vector<std::size_t> kept; // original coordinates that survived
};

/// Drops every coordinate j with alpha_j = 0 (nullopt) from H and alpha.
template <class S>
ZeroSupportReduction<S> reduce_zero_support(const ExponentData& ed, const std::vector<std::optional<S>>& alpha)
{
    ed.validate();
    if (alpha.size() != ed.n())
        throw DimensionError("expected " + std::to_string(ed.n()) + " parameters, got " +
                             std::to_string(alpha.size()));
    ZeroSupportReduction<S> out;
    for (std::size_t j = 0; j < alpha.size(); ++j)
        if (alpha[j]) {
            out.kept.push_back(j);
            out.alpha.push_back(*alpha[j]);
        }
    out.ed.m = ed.m;
    out.ed.H = IntMatrix(out.kept.size(), out.kept.size());
    for (std::size_t a = 0; a < out.kept.size(); ++a)
        for (std::size_t b = 0; b < out.kept.size(); ++b)
            out.ed.H(a, b) = ed.H(out.kept[a], out.kept[b]);
    return out;
}

} // namespace qtorus
