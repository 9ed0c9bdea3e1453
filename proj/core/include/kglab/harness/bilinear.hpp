#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "kglab/harness/record.hpp"
#include "kglab/spectral/grid.hpp"

namespace kglab::harness {

using spectral::DyadicIndex;
using spectral::Sign;

/**
 * Two free waves u = exp(+/- it<D>) phi, v = exp(+/- it<D>) psi and the
 * output projection P_O.  Two configurations are supported:
 *  - M == N: phi and psi are packets of frequency radius O centred at +N e
 *    and -N e; ratio scale N^{1/2} O^{(n-2)/2}.
 *  - 4M <= N: phi fills the annulus |xi| ~ M, psi is a packet of radius M at
 *    N e, and O = N; ratio scale M^{(n-1)/2}.
 */
struct BilinearCase {
  int dim = 3;
  DyadicIndex M{2};
  DyadicIndex N{32};
  DyadicIndex O{32};
  Sign sign_u = Sign::plus;
  Sign sign_v = Sign::plus;
  double mass_u = 1.0;
  double mass_v = 1.0;
  int trials = 2;
  std::uint64_t seed = 1;

  bool comparable() const { return M == N; }
  double scale() const;  // right-hand side without the data norms
};

struct BilinearResolution {
  int grid_points = 32;
  int time_points = 193;
};

struct BilinearEstimate {
  std::vector<double> ratios;  // ||P_O(uv)||_{L2_{t,x}} / (||phi|| ||psi||), one per trial
  double scale = 1.0;
  double mean_normalized() const;
};

BilinearEstimate estimate_bilinear(const BilinearCase& c, const BilinearResolution& res = {});
VerificationRecord verify_bilinear(const BilinearCase& c, const BilinearResolution& res = {});

// Sweep over cases; pass iff the normalized ratios stay within `slack` of
// each other across at least `min_scales` cases.
VerificationRecord bilinear_sweep(const std::string& name, const std::vector<BilinearCase>& cases,
                                  const BilinearResolution& res = {}, double slack = 4.0,
                                  int min_scales = 5);

struct TrilinearCase {
  int dim = 3;
  DyadicIndex H{8};
  DyadicIndex H_prime{8};
  DyadicIndex L{2};
  std::array<Sign, 3> signs{Sign::plus, Sign::plus, Sign::plus};
  double mass = 1.0;
  double horizon = 4.0;
  int trials = 2;
  std::uint64_t seed = 1;
  int grid_points = 32;
};

/**
 * (1/H) |int_0^T int u_L v_H' w_H dx dt| / (L^s |u_L| |v_H'| |w_H|) for free
 * waves, where s = max(1/2, (n-2)/2) and the norms are the data norms (equal
 * to the V^2 norms of free waves).
 */
std::vector<double> trilinear_ratios(const TrilinearCase& c);
VerificationRecord verify_trilinear(const std::vector<TrilinearCase>& sweep, double slack = 4.0);

}  // namespace kglab::harness
