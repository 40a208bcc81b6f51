#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qtorus/errors.hpp"

namespace qtorus {

namespace detail {
template <class S>
S scalar_inverse(const S& s)
{
    return inverse(s);
}
} // namespace detail

/// Generalized permutation matrix acting on row vectors from the right:
///   e_r * A = value(r) * e_{col(r)}.
/// Exactly one nonzero per row and per column; zero is never stored.
template <class S>
class MonomialMatrix {
public:
    MonomialMatrix(std::vector<std::size_t> cols, std::vector<S> values)
        : cols_(std::move(cols)), values_(std::move(values))
    {
        if (cols_.size() != values_.size())
            throw DimensionError("monomial matrix: column and value lists differ in length");
        std::vector<char> hit(cols_.size(), 0);
        for (auto c : cols_) {
            if (c >= cols_.size() || hit[c])
                throw InvariantViolation("monomial matrix: columns do not form a permutation");
            hit[c] = 1;
        }
    }

    static MonomialMatrix scalar(std::size_t dim, const S& c)
    {
        std::vector<std::size_t> cols(dim);
        for (std::size_t i = 0; i < dim; ++i)
            cols[i] = i;
        return MonomialMatrix(std::move(cols), std::vector<S>(dim, c));
    }

    std::size_t dim() const noexcept { return cols_.size(); }
    std::size_t col(std::size_t r) const { return cols_[r]; }
    const S& value(std::size_t r) const { return values_[r]; }
    const std::vector<std::size_t>& cols() const noexcept { return cols_; }
    const std::vector<S>& values() const noexcept { return values_; }

    /// (v A) B = v (A B).
    MonomialMatrix operator*(const MonomialMatrix& b) const
    {
        if (dim() != b.dim())
            throw DimensionError("monomial matrix product of different sizes");
        std::vector<std::size_t> cols(dim());
        std::vector<S> vals;
        vals.reserve(dim());
        for (std::size_t r = 0; r < dim(); ++r) {
            const auto mid = cols_[r];
            cols[r] = b.cols_[mid];
            vals.push_back(values_[r] * b.values_[mid]);
        }
        return MonomialMatrix(std::move(cols), std::move(vals));
    }

    MonomialMatrix inverse() const
    {
        std::vector<std::size_t> cols(dim());
        std::vector<std::optional<S>> vals(dim());
        for (std::size_t r = 0; r < dim(); ++r) {
            cols[cols_[r]] = r;
            vals[cols_[r]] = detail::scalar_inverse(values_[r]);
        }
        std::vector<S> out;
        out.reserve(dim());
        for (auto& v : vals)
            out.push_back(std::move(*v));
        return MonomialMatrix(std::move(cols), std::move(out));
    }

    MonomialMatrix scaled(const S& c) const
    {
        std::vector<S> vals;
        vals.reserve(dim());
        for (const auto& v : values_)
            vals.push_back(c * v);
        return MonomialMatrix(cols_, std::move(vals));
    }

    bool is_diagonal() const
    {
        for (std::size_t r = 0; r < dim(); ++r)
            if (cols_[r] != r)
                return false;
        return true;
    }

    /// The scalar c when this matrix equals c * I.
    std::optional<S> as_scalar() const
    {
        if (dim() == 0 || !is_diagonal())
            return std::nullopt;
        for (const auto& v : values_)
            if (!(v == values_.front()))
                return std::nullopt;
        return values_.front();
    }

    friend bool operator==(const MonomialMatrix& a, const MonomialMatrix& b)
    {
        return a.cols_ == b.cols_ && a.values_ == b.values_;
    }

private:
    std::vector<std::size_t> cols_;
    std::vector<S> values_;
};

/// A^e for any integer e (negative powers go through the inverse).
template <class S>
MonomialMatrix<S> power(const MonomialMatrix<S>& a, std::int64_t e, const S& one)
{
    MonomialMatrix<S> result = MonomialMatrix<S>::scalar(a.dim(), one);
    MonomialMatrix<S> base = e < 0 ? a.inverse() : a;
    std::uint64_t ue = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    while (ue) {
        if (ue & 1)
            result = result * base;
        ue >>= 1;
        if (ue)
            base = base * base;
    }
    return result;
}

/// Maps every entry through f, keeping the sparsity pattern.
template <class T, class S, class F>
MonomialMatrix<T> map_entries(const MonomialMatrix<S>& a, F&& f)
{
    std::vector<T> vals;
    vals.reserve(a.dim());
    for (const auto& v : a.values())
        vals.push_back(f(v));
    return MonomialMatrix<T>(a.cols(), std::move(vals));
}

} // namespace qtorus
