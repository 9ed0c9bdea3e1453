#include "kglab/spectral/modulation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft_backend.hpp"
#include "kglab/spectral/multipliers.hpp"

namespace kglab::spectral {

void SpaceTimeField::validate() const {
  if (times.size() < 2) throw std::invalid_argument("space-time field: need at least 2 samples");
  if (times.size() != snapshots.size())
    throw std::invalid_argument("space-time field: times and snapshots differ in length");
  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  if (!(dt > 0.0)) throw std::invalid_argument("space-time field: times must increase");
  for (std::size_t j = 1; j < times.size(); ++j) {
    if (std::abs(times[j] - times[j - 1] - dt) > 1e-9 * std::max(1.0, std::abs(dt)) + 1e-12 * std::abs(times[j]))
      throw std::invalid_argument("space-time field: non-uniform times");
    require_same_lattice(snapshots[0], snapshots[j], "space-time field");
  }
}

double SpaceTimeField::step() const {
  return (times.back() - times.front()) / static_cast<double>(times.size() - 1);
}

double temporal_nyquist(const SpaceTimeField& u) { return std::numbers::pi / u.step(); }

double space_time_l2_norm(const SpaceTimeField& u) {
  u.validate();
  double acc = 0.0;
  for (const auto& s : u.snapshots) {
    const double n = l2_norm(s);
    acc += n * n;
  }
  return std::sqrt(u.step() * acc);
}

namespace {

template <class Symbol>
SpaceTimeField filter_modulation(const SpaceTimeField& u, Sign sign, const ModulationOptions& opt,
                                 Symbol&& symbol) {
  u.validate();
  require_positive_mass(opt.mass);
  const std::size_t steps = u.times.size();
  const int len = static_cast<int>(steps);
  const double dt = u.step();
  const double s = sign_value(sign);
  const auto& lattice = u.snapshots.front().lattice();

  std::vector<double> window(steps, 1.0);
  if (opt.window == TemporalWindow::hann) {
    for (std::size_t j = 0; j < steps; ++j) {
      const double x = std::sin(std::numbers::pi * static_cast<double>(j) / (steps - 1));
      window[j] = x * x;
    }
  }
  std::vector<double> weight(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const long kk = static_cast<long>(k) < (len + 1) / 2 ? static_cast<long>(k)
                                                          : static_cast<long>(k) - len;
    weight[k] = symbol(2.0 * std::numbers::pi * kk / (len * dt)) / len;
  }

  SpaceTimeField out{u.times, u.snapshots};
  std::vector<Complex> series(steps), spectrum(steps);
  for (std::size_t node = 0; node < lattice.size(); ++node) {
    const double omega = s * japanese_bracket(opt.mass, lattice.norm_squared(node));
    for (std::size_t j = 0; j < steps; ++j)
      series[j] = u.snapshots[j][node] * std::polar(window[j], -omega * u.times[j]);
    detail::execute_dft(1, len, detail::Direction::forward, series, spectrum);
    for (std::size_t k = 0; k < steps; ++k) spectrum[k] *= weight[k];
    detail::execute_dft(1, len, detail::Direction::backward, spectrum, series);
    for (std::size_t j = 0; j < steps; ++j)
      out.snapshots[j][node] = series[j] * std::polar(1.0, omega * u.times[j]);
  }
  return out;
}

}  // namespace

SpaceTimeField modulation_project(const SpaceTimeField& u, DyadicIndex m, Sign sign,
                                  const ModulationOptions& options) {
  return filter_modulation(u, sign, options,
                           [&](double sigma) { return dyadic_cutoff(sigma, m); });
}

SpaceTimeField modulation_project_below(const SpaceTimeField& u, DyadicIndex m, Sign sign,
                                        const ModulationOptions& options) {
  return filter_modulation(u, sign, options,
                           [&](double sigma) { return dyadic_cutoff_below(sigma, m); });
}

SpaceTimeField modulation_project_above(const SpaceTimeField& u, DyadicIndex m, Sign sign,
                                        const ModulationOptions& options) {
  return filter_modulation(u, sign, options,
                           [&](double sigma) { return 1.0 - dyadic_cutoff_below(sigma, m); });
}

}  // namespace kglab::spectral
