#include "kglab/dynamics/initial_data.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kglab/spectral/multipliers.hpp"

namespace kglab::dynamics {

CauchyData gaussian_data(const LatticePtr& lattice, const std::vector<double>& masses,
                         double amplitude, double width, double s) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_data: width must be positive");
  if (!(amplitude >= 0.0)) throw std::invalid_argument("gaussian_data: amplitude must be >= 0");
  const auto& grid = lattice->grid();
  const int n = grid.points_per_axis;
  const double h = grid.spacing(), centre = 0.5 * grid.box_length;
  std::vector<double> values(lattice->size());
  for (std::size_t node = 0; node < values.size(); ++node) {
    std::size_t rest = node;
    double r2 = 0.0;
    for (int a = 0; a < grid.dim; ++a) {
      const double x = h * static_cast<double>(rest % n) - centre;
      rest /= n;
      r2 += x * x;
    }
    values[node] = std::exp(-r2 / (2.0 * width * width));
  }
  SpectralField shape = forward_transform(lattice, values);
  for (std::size_t i = 0; i < shape.size(); ++i)
    if (!lattice->inside_dealias_band(i) || lattice->touches_nyquist(i)) shape[i] = Complex{};

  CauchyData data;
  for (double m : masses) {
    SpectralField f = shape;
    const double norm = spectral::sobolev_norm(f, s, m);
    if (norm == 0.0) throw std::invalid_argument("gaussian_data: profile unresolved on this grid");
    f *= amplitude / norm;
    data.position.push_back(f);
    data.velocity.emplace_back(lattice);
  }
  return data;
}

ThresholdProbe probe_stability(const CauchyData& data, const MassSystem& system, double horizon,
                               double dt, double envelope, double s) {
  ThresholdProbe probe;
  EvolveOptions opt;
  opt.sample_every = std::max(1, static_cast<int>(std::lround(horizon / dt)));
  opt.sobolev_index = s;
  opt.store_states = false;
  try {
    const auto run = evolve(data, system, horizon, dt, opt);
    probe.growth = run.initial_norm > 0.0 ? run.max_norm / run.initial_norm : 1.0;
  } catch (const NumericalAbort&) {
    probe.growth = std::numeric_limits<double>::infinity();
  }
  probe.stable = probe.growth <= envelope;
  return probe;
}

ThresholdReport stability_threshold(const std::function<CauchyData(double)>& make_data,
                                    const MassSystem& system, double horizon, double dt,
                                    double low, double high, int bisections, double envelope,
                                    double s) {
  if (!(low > 0.0 && high > low)) throw std::invalid_argument("stability_threshold: need 0 < low < high");
  ThresholdReport report;
  auto run = [&](double amp) {
    auto p = probe_stability(make_data(amp), system, horizon, dt, envelope, s);
    p.amplitude = amp;
    report.probes.push_back(p);
    return p.stable;
  };
  if (!run(low)) {
    report.unstable_amplitude = low;
    return report;
  }
  report.stable_amplitude = low;
  if (run(high)) {
    report.stable_amplitude = high;
    return report;
  }
  report.unstable_amplitude = high;
  for (int i = 0; i < bisections; ++i) {
    const double mid = std::sqrt(report.stable_amplitude * report.unstable_amplitude);
    if (run(mid))
      report.stable_amplitude = mid;
    else
      report.unstable_amplitude = mid;
  }
  return report;
}

}  // namespace kglab::dynamics
