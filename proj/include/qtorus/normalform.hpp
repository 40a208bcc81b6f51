#pragma once

#include <cstdint>
#include <vector>

#include "qtorus/intlat.hpp"

namespace qtorus {

/// The data (H, m) of a quantum torus: x_i x_j = q^{H_ij} x_j x_i with q a
/// primitive m-th root of unity.
struct ExponentData {
    IntMatrix H;
    std::int64_t m = 1;

    std::size_t n() const noexcept { return H.rows(); }
    /// Throws ShapeError / InvalidOrderError.
    void validate() const;
};

/// Torus normal form in generator order X_1..X_s, X_{s+1}..X_{2s}, central.
/// Column j of U is the exponent vector of X_{j+1} in the original x's, so
/// (U^T H U)(i, i+s) = d_i for the noncentral blocks.
struct TorusNormalForm {
    std::size_t n = 0;
    std::int64_t m = 1;
    std::size_t s = 0;
    std::vector<mpz_class> dlist;     // raw block exponents, m does not divide d_i
    std::vector<std::int64_t> hlist;  // gcd(d_i, m), h_1 | h_2 | ...
    std::vector<std::int64_t> klist;  // m / h_i >= 2
    std::vector<mpz_class> central_d; // folded blocks with m | d, paired at 2s, 2s+1, ...
    IntMatrix U;
    std::size_t crank = 0; // n - 2s

    /// Residue of d_i mod m, the exponent of q in block i.
    std::int64_t block_qexp(std::size_t i) const;
    /// prod k_i, the module dimension.
    std::uint64_t dimension() const;
    /// Expected U^T H U in the generator order above.
    IntMatrix block_matrix() const;

    friend bool operator==(const TorusNormalForm&, const TorusNormalForm&) = default;
};

TorusNormalForm compute_normal_form(const ExponentData& ed);

/// prod k_i, cross-checked against sqrt(image_size_mod_m(H, m)); throws
/// InvariantViolation if the two disagree.
std::uint64_t pi_degree(const ExponentData& ed);
std::uint64_t pi_degree(const ExponentData& ed, const TorusNormalForm& nf);

/// gcd(t mod m, m): the divisor representative of t's coset under units.
std::int64_t canonical_divisor(std::int64_t t, std::int64_t m);
std::int64_t canonical_divisor(const mpz_class& t, std::int64_t m);

} // namespace qtorus
