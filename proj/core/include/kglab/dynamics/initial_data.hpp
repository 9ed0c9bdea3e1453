#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "kglab/dynamics/halfwave.hpp"

namespace kglab::dynamics {

/**
 * Real Gaussian position f = A exp(-|x - centre|^2 / (2 width^2)), zero
 * velocity, on every component.  A is chosen so that ||f||_{H^s} equals
 * `amplitude`.  Modes outside the 2/3-rule band and the Nyquist modes are
 * removed so the data is exactly representable by the truncated system.
 */
CauchyData gaussian_data(const LatticePtr& lattice, const std::vector<double>& masses,
                         double amplitude, double width, double s = 0.5);

struct ThresholdProbe {
  double amplitude = 0.0;
  double growth = 0.0;  // sup_t |u(t)|_{H^s} / |u(0)|_{H^s}, infinity on abort
  bool stable = false;
};

struct ThresholdReport {
  double stable_amplitude = 0.0;    // largest amplitude observed stable
  double unstable_amplitude = 0.0;  // smallest amplitude observed unstable (0 if none)
  std::vector<ThresholdProbe> probes;
};

// One run; stable iff no abort and growth stays within `envelope`.
ThresholdProbe probe_stability(const CauchyData& data, const MassSystem& system, double horizon,
                               double dt, double envelope = 2.0, double s = 0.5);

// Geometric bisection over amplitude in [low, high].
ThresholdReport stability_threshold(const std::function<CauchyData(double)>& make_data,
                                    const MassSystem& system, double horizon, double dt,
                                    double low, double high, int bisections,
                                    double envelope = 2.0, double s = 0.5);

}  // namespace kglab::dynamics
