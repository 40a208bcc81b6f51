#include "qtorus/image_kernels.hpp"

#include <vector>

#include "qtorus/scalars.hpp"

namespace qtorus {

namespace {

struct Domain {
    std::size_t n;
    std::uint64_t m;
    std::uint64_t size;
    std::vector<std::uint64_t> h; // H mod m, row-major
};

Domain prepare(const IntMatrix& h, std::int64_t m)
{
    if (m < 1)
        throw InvalidOrderError("root of unity order must be positive, got " + std::to_string(m));
    if (!h.square())
        throw ShapeError("image size needs a square matrix");
    Domain d{h.rows(), static_cast<std::uint64_t>(m), 1, {}};
    for (std::size_t i = 0; i < d.n; ++i)
        if (__builtin_mul_overflow(d.size, d.m, &d.size) || d.size > kMaxBruteForceDomain)
            throw InvalidParameterError("brute-force domain m^n too large");
    for (std::size_t i = 0; i < d.n; ++i)
        for (std::size_t j = 0; j < d.n; ++j)
            d.h.push_back(static_cast<std::uint64_t>(mod_floor(h(i, j), m)));
    return d;
}

// Image of the residue vector with mixed-radix code x, as a code.
std::uint64_t image_code(const Domain& d, std::uint64_t x, std::vector<std::uint64_t>& buf)
{
    for (std::size_t j = 0; j < d.n; ++j) {
        buf[j] = x % d.m;
        x /= d.m;
    }
    std::uint64_t code = 0;
    for (std::size_t i = d.n; i-- > 0;) {
        unsigned __int128 acc = 0;
        for (std::size_t j = 0; j < d.n; ++j)
            acc += static_cast<unsigned __int128>(d.h[i * d.n + j]) * buf[j];
        code = code * d.m + static_cast<std::uint64_t>(acc % d.m);
    }
    return code;
}

} // namespace

std::uint64_t image_size_bruteforce_serial(const IntMatrix& h, std::int64_t m)
{
    const Domain d = prepare(h, m);
    std::vector<char> hit(d.size, 0);
    std::vector<std::uint64_t> buf(d.n);
    for (std::uint64_t x = 0; x < d.size; ++x)
        hit[image_code(d, x, buf)] = 1;
    std::uint64_t count = 0;
    for (char c : hit)
        count += c ? 1 : 0;
    return count;
}

std::uint64_t image_size_bruteforce_parallel(const IntMatrix& h, std::int64_t m)
{
    const Domain d = prepare(h, m);
    std::vector<char> hit(d.size, 0);
    const auto total = static_cast<std::int64_t>(d.size);
#pragma omp parallel
    {
        std::vector<std::uint64_t> buf(d.n);
        std::vector<std::uint64_t> local;
#pragma omp for schedule(static)
        for (std::int64_t x = 0; x < total; ++x)
            local.push_back(image_code(d, static_cast<std::uint64_t>(x), buf));
#pragma omp critical
        for (auto c : local)
            hit[c] = 1;
    }
    std::uint64_t count = 0;
#pragma omp parallel for reduction(+ : count)
    for (std::int64_t c = 0; c < total; ++c)
        count += hit[c] ? 1 : 0;
    return count;
}

} // namespace qtorus
