#pragma once

#include <complex>
#include <span>

namespace kglab::spectral::detail {

enum class Direction { forward, backward };

// Unnormalized multi-dimensional DFT of a cube with `points` nodes per axis
// (row-major).  forward uses exp(-i k x), backward exp(+i k x).
void execute_dft(int rank, int points, Direction dir, std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);

}  // namespace kglab::spectral::detail
