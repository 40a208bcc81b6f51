#pragma once

// Brute-force cardinality of the image of Z^n --H--> Z^n --> (Z/mZ)^n:
// enumerate all m^n residue vectors, map them, count distinct images.
// Independent of the Smith-form route in intlat.

#include <cstdint>

#include "qtorus/intlat.hpp"

namespace qtorus {

/// Largest m^n the enumerators accept.
inline constexpr std::uint64_t kMaxBruteForceDomain = std::uint64_t{1} << 24;

std::uint64_t image_size_bruteforce_serial(const IntMatrix& h, std::int64_t m);
std::uint64_t image_size_bruteforce_parallel(const IntMatrix& h, std::int64_t m);

} // namespace qtorus
