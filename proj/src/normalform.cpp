#include "qtorus/normalform.hpp"

#include <numeric>

#include "qtorus/scalars.hpp"

namespace qtorus {

void ExponentData::validate() const
{
    if (m < 1)
        throw InvalidOrderError("root of unity order must be positive, got " + std::to_string(m));
    if (!H.square())
        throw ShapeError("exponent matrix must be square");
    if (!H.is_antisymmetric())
        throw ShapeError("exponent matrix must be antisymmetric (H^T = -H, zero diagonal)");
}

std::int64_t canonical_divisor(std::int64_t t, std::int64_t m)
{
    if (m < 1)
        throw InvalidOrderError("root of unity order must be positive, got " + std::to_string(m));
    return std::gcd(mod_floor(t, m), m);
}

std::int64_t canonical_divisor(const mpz_class& t, std::int64_t m)
{
    if (m < 1)
        throw InvalidOrderError("root of unity order must be positive, got " + std::to_string(m));
    return canonical_divisor(mod_floor(t, m), m);
}

std::int64_t TorusNormalForm::block_qexp(std::size_t i) const { return mod_floor(dlist.at(i), m); }

std::uint64_t TorusNormalForm::dimension() const
{
    std::uint64_t d = 1;
    for (auto k : klist)
        if (__builtin_mul_overflow(d, static_cast<std::uint64_t>(k), &d))
            throw OverflowError("module dimension does not fit in 64 bits");
    return d;
}

IntMatrix TorusNormalForm::block_matrix() const
{
    IntMatrix b(n, n);
    for (std::size_t i = 0; i < s; ++i) {
        b(i, i + s) = dlist[i];
        b(i + s, i) = -dlist[i];
    }
    for (std::size_t i = 0; i < central_d.size(); ++i) {
        const std::size_t a = 2 * s + 2 * i;
        b(a, a + 1) = central_d[i];
        b(a + 1, a) = -central_d[i];
    }
    return b;
}

TorusNormalForm compute_normal_form(const ExponentData& ed)
{
    ed.validate();
    const auto cert = skew_normal_form(ed.H);
    const std::size_t n = ed.n();

    TorusNormalForm nf;
    nf.n = n;
    nf.m = ed.m;

    // d_1 | d_2 | ... so the blocks with m | d_i form a suffix.
    std::vector<std::size_t> live, folded;
    for (std::size_t i = 0; i < cert.dlist.size(); ++i) {
        if (mod_floor(cert.dlist[i], ed.m) == 0)
            folded.push_back(i);
        else
            live.push_back(i);
    }
    nf.s = live.size();
    nf.crank = n - 2 * nf.s;

    std::vector<std::size_t> order; // new column j <- certificate column order[j]
    for (auto i : live)
        order.push_back(2 * i);
    for (auto i : live)
        order.push_back(2 * i + 1);
    for (auto i : folded) {
        order.push_back(2 * i);
        order.push_back(2 * i + 1);
    }
    for (std::size_t c = 2 * cert.dlist.size(); c < n; ++c)
        order.push_back(c);

    nf.U = IntMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < n; ++r)
            nf.U(r, j) = cert.U(r, order[j]);

    for (auto i : live) {
        nf.dlist.push_back(cert.dlist[i]);
        const auto h = canonical_divisor(cert.dlist[i], ed.m);
        nf.hlist.push_back(h);
        nf.klist.push_back(ed.m / h);
    }
    for (auto i : folded)
        nf.central_d.push_back(cert.dlist[i]);

    for (std::size_t i = 0; i < nf.s; ++i) {
        if (nf.klist[i] < 2 || order_of_qpower(nf.dlist[i], ed.m) != nf.klist[i])
            throw InvariantViolation("block period does not match the order of q^d");
        if (i > 0 && nf.hlist[i] % nf.hlist[i - 1] != 0)
            throw InvariantViolation("canonical divisor chain broken");
    }
    if (nf.U.transpose() * ed.H * nf.U != nf.block_matrix())
        throw InvariantViolation("normal form congruence replay failed");
    return nf;
}

std::uint64_t pi_degree(const ExponentData& ed, const TorusNormalForm& nf)
{
    const std::uint64_t prod = nf.dimension();
    const mpz_class root = exact_isqrt(image_size_mod_m(ed.H, ed.m));
    if (root != mpz_class(static_cast<unsigned long>(prod)))
        throw InvariantViolation("PI degree mismatch: product of periods " + std::to_string(prod) +
                                 " but sqrt of image size " + root.get_str());
    return prod;
}

std::uint64_t pi_degree(const ExponentData& ed) { return pi_degree(ed, compute_normal_form(ed)); }

} // namespace qtorus
