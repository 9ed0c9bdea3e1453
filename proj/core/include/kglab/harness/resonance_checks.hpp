#pragma once

#include <array>
#include <cstdint>

#include "kglab/harness/record.hpp"
#include "kglab/nonlinear/system.hpp"

namespace kglab::harness {

using nonlinear::MassTriple;
using nonlinear::Point;

// Sample set for (xi, eta) sweeps: radial x angular grid plus random points.
struct ResonanceSweep {
  double max_norm = 1024.0;
  int radial_points = 48;
  int angle_points = 33;
  int random_samples = 20000;
  std::uint64_t seed = 1;
};

// (<xi1> + <xi2> - <xi1 + xi2>) * <xi_min>, all brackets at one mass
double modulation_statistic(double mass, const Point& xi1, const Point& xi2);

VerificationRecord verify_modulation_bound(double mass, int n, const ResonanceSweep& sweep = {});

struct NonresonanceSearch {
  int starts = 8;
  double min_step = 1e-9;
  int max_rounds = 4000;
};

/**
 * Positive-floor test over all ordered mass assignments when 2 min > max;
 * otherwise a grid scan followed by coordinate descent for the smallest
 * resonance value (ties go to the smallest |xi|^2 + |eta|^2).
 */
VerificationRecord verify_nonresonance_bound(const std::array<double, 3>& masses, int n,
                                             const ResonanceSweep& sweep = {},
                                             const NonresonanceSearch& search = {});

}  // namespace kglab::harness
