#include "qtorus/repbuild.hpp"

namespace qtorus {

BasisIndex::BasisIndex(std::vector<std::int64_t> periods) : periods_(std::move(periods))
{
    strides_.reserve(periods_.size());
    for (auto k : periods_) {
        if (k < 1)
            throw InvalidParameterError("block period must be positive");
        strides_.push_back(size_);
        if (__builtin_mul_overflow(size_, static_cast<std::uint64_t>(k), &size_))
            throw OverflowError("basis size does not fit in 64 bits");
    }
}

std::uint64_t BasisIndex::encode(const std::vector<std::int64_t>& tuple) const
{
    if (tuple.size() != periods_.size())
        throw DimensionError("basis tuple has the wrong length");
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i)
        idx += static_cast<std::uint64_t>(mod_floor(tuple[i], periods_[i])) * strides_[i];
    return idx;
}

std::vector<std::int64_t> BasisIndex::decode(std::uint64_t index) const
{
    std::vector<std::int64_t> t(periods_.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = digit(index, i);
    return t;
}

std::uint64_t BasisIndex::shift(std::uint64_t index, std::size_t i, std::int64_t step) const
{
    const std::int64_t a = digit(index, i);
    const std::int64_t b = mod_floor(a + step, periods_[i]);
    return index - static_cast<std::uint64_t>(a) * strides_[i] + static_cast<std::uint64_t>(b) * strides_[i];
}

namespace detail {

void check_rep_shape(const TorusNormalForm& nf, std::size_t nalpha)
{
    if (nalpha != nf.n)
        throw DimensionError("expected " + std::to_string(nf.n) + " parameters, got " + std::to_string(nalpha));
    if (nf.dimension() > kMaxModuleDimension)
        throw InvalidParameterError("module dimension " + std::to_string(nf.dimension()) + " exceeds the limit " +
                                    std::to_string(kMaxModuleDimension));
}

std::int64_t to_int64(const mpz_class& x, const char* what)
{
    if (!x.fits_slong_p())
        throw OverflowError(std::string(what) + " does not fit in 64 bits: " + x.get_str());
    return x.get_si();
}

} // namespace detail

SimpleModuleRep<AlphaMonomial> build_symbolic(const TorusNormalForm& nf)
{
    std::vector<AlphaMonomial> alpha;
    for (std::size_t j = 0; j < nf.n; ++j)
        alpha.push_back(AlphaMonomial::alpha(nf.n, j, nf.m));
    return build_module(nf, std::move(alpha), AlphaMonomial::qpower(nf.n, 1, nf.m));
}

} // namespace qtorus
