#include "kglab/variation/pvariation.hpp"

#include <algorithm>
#include <cmath>

#include "kglab/spectral/multipliers.hpp"

namespace kglab::variation {

double p_variation(const DistanceTable& table, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p_variation: p must be >= 1");
  const std::size_t n = table.size();
  if (n < 2) throw std::invalid_argument("p_variation: need at least 2 effective samples");
  // Appending an endpoint never lowers the sum, so optimal partitions may be
  // taken to contain both the first and the last sample.
  std::vector<double> best(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    double b = 0.0;
    for (std::size_t i = 0; i < j; ++i) b = std::max(b, best[i] + std::pow(table(i, j), p));
    best[j] = b;
  }
  return std::pow(best.back(), 1.0 / p);
}

double p_variation(const SampledPath<double>& path, double p) {
  return p_variation(path, p, [](double a, double b) { return std::abs(a - b); }, 0.0);
}

double p_variation(const SampledPath<SpectralField>& path, double p) {
  if (path.values.empty()) throw std::invalid_argument("p_variation: empty path");
  const SpectralField zero(path.values.front().lattice_ptr());
  return p_variation(
      path, p, [](const SpectralField& a, const SpectralField& b) { return l2_distance(a, b); },
      zero);
}

double v2_pm_norm(const SpaceTimeField& u, Sign sign, double mass) {
  u.validate();
  SampledPath<SpectralField> path{u.times, {}, true};
  path.values.reserve(u.snapshots.size());
  for (std::size_t j = 0; j < u.times.size(); ++j)
    path.values.push_back(spectral::free_propagate(u.snapshots[j], -u.times[j], mass, sign));
  return p_variation(path, 2.0);
}

SpaceTimeField half_wave_field(const dynamics::Trajectory& traj, int component, Sign sign) {
  traj.validate();
  SpaceTimeField u;
  u.times = traj.times;
  for (const auto& st : traj.states) {
    const auto& pair = st.at(component);
    u.snapshots.push_back(sign == Sign::plus ? pair.plus : pair.minus);
  }
  return u;
}

double v2_pm_norm(const dynamics::Trajectory& traj, int component, Sign sign) {
  if (traj.states.empty()) return 0.0;
  const double mass = traj.states.front().at(component).mass;
  return v2_pm_norm(half_wave_field(traj, component, sign), sign, mass);
}

double xs_proxy_norm(const dynamics::Trajectory& traj, int component, double s) {
  if (traj.states.empty()) return 0.0;
  const double mass = traj.states.front().at(component).mass;
  double acc = 0.0;
  for (Sign sign : {Sign::plus, Sign::minus}) {
    const SpaceTimeField u = half_wave_field(traj, component, sign);
    for (auto band : spectral::lp_bands(u.snapshots.front().lattice())) {
      SpaceTimeField piece{u.times, {}};
      for (const auto& f : u.snapshots) piece.snapshots.push_back(spectral::lp_project(f, band));
      const double v = v2_pm_norm(piece, sign, mass);
      const double weight = std::pow(std::max(band.as_double(), 1.0), s);
      acc += weight * weight * v * v;
    }
  }
  return std::sqrt(acc);
}

ModProjectionReport check_mod_projection_bound(const SpaceTimeField& u, DyadicIndex m, Sign sign,
                                               double mass, spectral::TemporalWindow window) {
  u.validate();
  if (2.0 * m.as_double() >= spectral::temporal_nyquist(u))
    throw std::invalid_argument("check_mod_projection_bound: sampling too coarse for modulation " +
                                std::to_string(m.value()));
  ModProjectionReport report;
  report.modulation = m;
  const auto projected = spectral::modulation_project(u, m, sign, {mass, window});
  report.projected_norm = spectral::space_time_l2_norm(projected);
  report.v2_norm = v2_pm_norm(u, sign, mass);
  report.ratio = report.v2_norm > 0.0
                     ? report.projected_norm * std::sqrt(std::max(m.as_double(), 1.0)) / report.v2_norm
                     : 0.0;
  return report;
}

}  // namespace kglab::variation
