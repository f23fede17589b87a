#pragma once

#include <cstddef>
#include <optional>

#include "qcc/tensor.hpp"

namespace qcc {

/// Exact rank of a real matrix, treating every stored double as the dyadic
/// rational it represents. Uses fraction-free (Bareiss) elimination over
/// arbitrary-precision integers. Throws ArgumentError on non-real entries.
std::size_t exact_rank(const CMatrix& m);

/// Rounds every entry to the nearest multiple of 2^-denominator_bits when all
/// entries lie within tol of such a grid point; nullopt otherwise. Used to
/// recover the rational matrix behind a simulated table before exact_rank.
std::optional<CMatrix> snap_to_dyadic(const CMatrix& m, unsigned denominator_bits, double tol = 1e-10);

}  // namespace qcc
