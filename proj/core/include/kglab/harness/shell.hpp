#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "kglab/harness/record.hpp"

namespace kglab::harness {

/**
 * Two thin spherical shells, one centred at 0 (radius r, half-width delta)
 * and one at xi0 (radius R, half-width Delta), cut by the cylinder of radius
 * `tube` around the line through 0 and xi0.
 */
struct ShellSpec {
  int dim = 3;
  double r = 1.0;
  double R = 1.0;
  double delta = 0.1;
  double Delta = 0.1;
  double tube = 1.0;
  double xi0_norm = 2.0;

  void validate() const;
  // min(r, R, tube)^(n-3) r R delta Delta / |xi0|
  double bound() const;
};

struct ShellEstimate {
  double volume = 0.0;
  double standard_error = 0.0;
  double bound = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  bool empty = false;  // no sample hit the intersection

  double ratio() const { return bound > 0.0 ? volume / bound : 0.0; }
  double relative_error() const { return volume > 0.0 ? standard_error / volume : 0.0; }
};

// exact membership test used by the sampler
bool in_shell_intersection(const ShellSpec& spec, const std::array<double, 8>& x);

// Stratified Monte Carlo over the slab that must contain the intersection.
ShellEstimate estimate_shell_volume(const ShellSpec& spec, std::uint64_t samples,
                                    std::uint64_t seed, int strata = 512);

VerificationRecord shell_intersection_volume(const ShellSpec& spec, std::uint64_t samples,
                                             std::uint64_t seed);

// All cases of a sweep; pass iff non-empty ratios lie within `slack` of each
// other and every non-empty case has relative standard error below max_rel_error.
VerificationRecord shell_sweep(const std::vector<ShellSpec>& cases, std::uint64_t samples,
                               std::uint64_t seed, double slack = 4.0, double max_rel_error = 0.05);

using LatticePoint = std::array<long long, 4>;

long long convolution_support_constant(const std::vector<LatticePoint>& a,
                                       const std::vector<LatticePoint>& b);

VerificationRecord verify_convolution_support(const std::vector<LatticePoint>& a,
                                              const std::vector<LatticePoint>& b, int trials,
                                              std::uint64_t seed);

}  // namespace kglab::harness
