#include "kglab/spectral/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kglab::spectral {
namespace {

double bump_raw(double t) noexcept {
  const double q = std::pow(std::abs(t) / 2.0, 8);
  return std::exp(1.0 - 1.0 / (1.0 - q));
}

// raw profile at |t| = 1; dividing by it and clipping makes the bump flat on [-1, 1]
const double kBumpScale = bump_raw(1.0);

}  // namespace

double bump(double t) noexcept {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  return std::min(1.0, bump_raw(a) / kBumpScale);
}

double dyadic_cutoff(double t, DyadicIndex n) noexcept {
  if (n.is_zero()) return bump(2.0 * t);
  const double scale = n.as_double();
  return bump(t / scale) - bump(2.0 * t / scale);
}

double dyadic_cutoff_below(double t, DyadicIndex n) noexcept {
  if (n.is_zero()) return 0.0;
  // telescoping sum of psi_K over K < n
  return bump(2.0 * t / n.as_double());
}

void require_positive_mass(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw std::invalid_argument("mass must be positive and finite");
}

SpectralField bracket_multiplier(const SpectralField& f, double mass, double power) {
  require_positive_mass(mass);
  const double m2 = mass * mass;
  return apply_radial(f, [&](double n2) { return std::pow(m2 + n2, 0.5 * power); });
}

SpectralField lp_project(const SpectralField& f, DyadicIndex n) {
  return apply_radial(f, [&](double n2) { return dyadic_cutoff(std::sqrt(n2), n); });
}

std::vector<DyadicIndex> lp_bands(const FrequencyLattice& lattice) {
  return dyadic_range(lattice.max_norm());
}

double sobolev_norm(const SpectralField& f, double s, double mass) {
  require_positive_mass(mass);
  const double m2 = mass * mass;
  auto c = f.coefficients();
  auto n2 = f.lattice().norms_squared();
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) acc += std::pow(m2 + n2[i], s) * std::norm(c[i]);
  return std::sqrt(f.lattice().grid().cell_volume() * acc);
}

SpectralField free_propagate(const SpectralField& f, double t, double mass, Sign sign) {
  require_positive_mass(mass);
  const double phase = sign_value(sign) * t;
  return apply_radial(f, [&](double n2) {
    return std::polar(1.0, phase * japanese_bracket(mass, n2));
  });
}

}  // namespace kglab::spectral
