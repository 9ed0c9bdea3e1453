#pragma once

#include <vector>

#include "kglab/spectral/field.hpp"

namespace kglab::spectral {

// Uniformly sampled space-time field, one snapshot per time.
struct SpaceTimeField {
  std::vector<double> times;
  std::vector<SpectralField> snapshots;

  void validate() const;
  double step() const;
};

enum class TemporalWindow { none, hann };

struct ModulationOptions {
  double mass = 1.0;
  TemporalWindow window = TemporalWindow::hann;
};

/**
 * Restricts space-time frequencies to |tau -/+ <xi>| ~ M.  Each mode is
 * unrotated by exp(-/+ i t <xi>), windowed, transformed in time, cut with the
 * dyadic modulation symbol and rotated back.  The result is the projection
 * of the windowed field; with TemporalWindow::none the band projections sum
 * exactly to the input.
 */
SpaceTimeField modulation_project(const SpaceTimeField& u, DyadicIndex m, Sign sign,
                                  const ModulationOptions& options = {});
SpaceTimeField modulation_project_below(const SpaceTimeField& u, DyadicIndex m, Sign sign,
                                        const ModulationOptions& options = {});
SpaceTimeField modulation_project_above(const SpaceTimeField& u, DyadicIndex m, Sign sign,
                                        const ModulationOptions& options = {});

// largest resolvable temporal frequency pi / dt
double temporal_nyquist(const SpaceTimeField& u);
// (sum_j dt * ||u(t_j)||^2)^(1/2)
double space_time_l2_norm(const SpaceTimeField& u);

}  // namespace kglab::spectral
