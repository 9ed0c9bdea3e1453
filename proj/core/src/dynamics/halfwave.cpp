#include "kglab/dynamics/halfwave.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kglab/spectral/multipliers.hpp"

namespace kglab::dynamics {

using spectral::japanese_bracket;
using spectral::Sign;

void CauchyData::validate() const {
  if (position.empty()) throw std::invalid_argument("cauchy data: need at least one component");
  if (velocity.size() != position.size())
    throw std::invalid_argument("cauchy data: position/velocity count mismatch");
  for (std::size_t i = 0; i < position.size(); ++i) {
    require_same_lattice(position[0], position[i], "cauchy data");
    require_same_lattice(position[0], velocity[i], "cauchy data");
  }
}

HalfWavePair decompose(const SpectralField& u, const SpectralField& u_t, double mass) {
  spectral::require_positive_mass(mass);
  require_same_lattice(u, u_t, "decompose");
  HalfWavePair pair{u, u, mass};
  auto n2 = u.lattice().norms_squared();
  for (std::size_t i = 0; i < u.size(); ++i) {
    // u^{+/-} = (u -/+ i u_t / <xi>) / 2
    const Complex tilt = Complex{0.0, 1.0} * u_t[i] / japanese_bracket(mass, n2[i]);
    pair.plus[i] = 0.5 * (u[i] - tilt);
    pair.minus[i] = u[i] - pair.plus[i];
  }
  return pair;
}

PositionVelocity reconstruct(const HalfWavePair& pair) {
  PositionVelocity out{pair.plus + pair.minus, pair.plus - pair.minus};
  auto n2 = pair.plus.lattice().norms_squared();
  for (std::size_t i = 0; i < n2.size(); ++i)
    out.velocity[i] *= Complex{0.0, japanese_bracket(pair.mass, n2[i])};
  return out;
}

HalfWaveState initial_pair(const CauchyData& data, const MassSystem& system) {
  data.validate();
  if (data.components() != system.components())
    throw std::invalid_argument("initial_pair: component count differs from system");
  HalfWaveState state;
  state.reserve(data.components());
  for (int i = 0; i < data.components(); ++i)
    state.push_back(decompose(data.position[i], data.velocity[i], system.mass(i)));
  return state;
}

CauchyData to_cauchy(const HalfWaveState& state) {
  CauchyData out;
  for (const auto& pair : state) {
    auto pv = reconstruct(pair);
    out.position.push_back(std::move(pv.position));
    out.velocity.push_back(std::move(pv.velocity));
  }
  return out;
}

CauchyData linear_exact(const CauchyData& data, const std::vector<double>& masses, double t) {
  data.validate();
  if (masses.size() != data.position.size())
    throw std::invalid_argument("linear_exact: one mass per component required");
  CauchyData out = data;
  for (std::size_t c = 0; c < masses.size(); ++c) {
    spectral::require_positive_mass(masses[c]);
    const auto& f = data.position[c];
    const auto& g = data.velocity[c];
    auto n2 = f.lattice().norms_squared();
    for (std::size_t i = 0; i < n2.size(); ++i) {
      const double w = japanese_bracket(masses[c], n2[i]);
      const double cs = std::cos(t * w), sn = std::sin(t * w);
      out.position[c][i] = cs * f[i] + sn / w * g[i];
      out.velocity[c][i] = -w * sn * f[i] + cs * g[i];
    }
  }
  return out;
}

void Trajectory::validate() const {
  if (times.size() != states.size())
    throw std::invalid_argument("trajectory: times and states misaligned");
  for (std::size_t j = 1; j < times.size(); ++j) {
    if (!(times[j] > times[j - 1])) throw std::invalid_argument("trajectory: times must increase");
    if (std::abs(times[j] - times[j - 1] - step_size) > 1e-9 * std::max(1.0, step_size))
      throw std::invalid_argument("trajectory: times must be uniform");
  }
}

double position_norm(const HalfWavePair& pair, double s) {
  return spectral::sobolev_norm(pair.plus + pair.minus, s, pair.mass);
}

double state_norm(const HalfWaveState& state, double s) {
  double acc = 0.0;
  for (const auto& pair : state) {
    const double n = position_norm(pair, s);
    acc += n * n;
  }
  return std::sqrt(acc);
}

double state_distance(const HalfWaveState& a, const HalfWaveState& b, double s) {
  if (a.size() != b.size()) throw std::invalid_argument("state_distance: component mismatch");
  double acc = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double p = spectral::sobolev_norm(a[c].plus - b[c].plus, s, a[c].mass);
    const double m = spectral::sobolev_norm(a[c].minus - b[c].minus, s, a[c].mass);
    acc += p * p + m * m;
  }
  return std::sqrt(acc);
}

bool has_conserved_energy(const MassSystem& system) {
  if (system.components() != 1) return system.is_linear();
  for (const auto& t : system.polynomial(0))
    if (t.coefficient.imag() != 0.0 || t.first.conjugate || t.second.conjugate) return false;
  return true;
}

double energy(const HalfWaveState& state, const MassSystem& system) {
  double total = 0.0;
  for (std::size_t c = 0; c < state.size(); ++c) {
    const auto pv = reconstruct(state[c]);
    const double m2 = state[c].mass * state[c].mass;
    auto n2 = pv.position.lattice().norms_squared();
    double acc = 0.0;
    for (std::size_t i = 0; i < n2.size(); ++i)
      acc += std::norm(pv.velocity[i]) + (n2[i] + m2) * std::norm(pv.position[i]);
    total += 0.5 * pv.position.lattice().grid().cell_volume() * acc;
  }
  if (system.components() == 1 && !system.is_linear() && has_conserved_energy(system)) {
    double c = 0.0;
    for (const auto& t : system.polynomial(0)) c += t.coefficient.real();
    const auto u = nonlinear::dealias(state[0].plus + state[0].minus);
    const auto sq = nonlinear::evaluate_nonlinearity(MassSystem::scalar_square(state[0].mass),
                                                     std::vector<SpectralField>{u});
    // int u^3 = <u, P(u^2)> holds exactly for band-limited u
    total -= c / 3.0 * spectral::inner_product(u, sq[0]).real();
  }
  return total;
}

// ---------------------------------------------------------------------------

LawsonStepper::LawsonStepper(const MassSystem& system, const LatticePtr& lattice, double dt)
    : system_(&system), lattice_(lattice), dt_(dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("stepper: dt must be positive");
  auto n2 = lattice_->norms_squared();
  for (double m : system.masses()) {
    std::vector<Complex> full(n2.size()), half(n2.size());
    std::vector<double> inv(n2.size());
    for (std::size_t i = 0; i < n2.size(); ++i) {
      const double w = japanese_bracket(m, n2[i]);
      full[i] = std::polar(1.0, dt * w);
      half[i] = std::polar(1.0, 0.5 * dt * w);
      inv[i] = 0.5 / w;
    }
    full_.push_back(std::move(full));
    half_.push_back(std::move(half));
    inv_two_bracket_.push_back(std::move(inv));
  }
}

void LawsonStepper::rotate(Stage& y, const std::vector<std::vector<Complex>>& phase) const {
  for (std::size_t c = 0; c < phase.size(); ++c) {
    auto& plus = y[2 * c];
    auto& minus = y[2 * c + 1];
    const auto& p = phase[c];
    for (std::size_t i = 0; i < p.size(); ++i) {
      plus[i] *= p[i];
      minus[i] *= std::conj(p[i]);
    }
  }
}

LawsonStepper::Stage LawsonStepper::forcing(const Stage& y) const {
  const int k = system_->components();
  std::vector<SpectralField> u;
  u.reserve(k);
  for (int c = 0; c < k; ++c) u.push_back(y[2 * c] + y[2 * c + 1]);
  auto rhs = nonlinear::evaluate_nonlinearity(*system_, u);
  Stage out;
  out.reserve(2 * k);
  for (int c = 0; c < k; ++c) {
    SpectralField plus = rhs[c];
    const auto& inv = inv_two_bracket_[c];
    // d/dt u^{+/-} gets -/+ i F / (2<D>)
    for (std::size_t i = 0; i < inv.size(); ++i) plus[i] *= Complex{0.0, -inv[i]};
    SpectralField minus = plus;
    minus *= -1.0;
    out.push_back(std::move(plus));
    out.push_back(std::move(minus));
  }
  return out;
}

void LawsonStepper::step(HalfWaveState& state) const {
  const int k = system_->components();
  if (static_cast<int>(state.size()) != k)
    throw std::invalid_argument("stepper: state has wrong component count");
  Stage y;
  y.reserve(2 * k);
  for (auto& pair : state) {
    if (!pair.plus.lattice().same_as(*lattice_) || !pair.minus.lattice().same_as(*lattice_))
      throw std::invalid_argument("stepper: state lives on a different lattice");
    y.push_back(pair.plus);
    y.push_back(pair.minus);
  }

  if (system_->is_linear()) {
    rotate(y, full_);
  } else try {
    const double h = dt_;
    auto axpy = [](Stage a, double s, const Stage& b) {
      for (std::size_t i = 0; i < a.size(); ++i) a[i].axpy(s, b[i]);
      return a;
    };

    const Stage k1 = forcing(y);
    Stage tmp = axpy(y, 0.5 * h, k1);
    rotate(tmp, half_);
    const Stage k2 = forcing(tmp);

    Stage y_half = y;
    rotate(y_half, half_);
    const Stage k3 = forcing(axpy(y_half, 0.5 * h, k2));

    Stage y_full = y_half;
    rotate(y_full, half_);
    Stage k3_rot = k3;
    rotate(k3_rot, half_);
    const Stage k4 = forcing(axpy(y_full, h, k3_rot));

    // y_{n+1} = E(h) y + h/6 (E(h) k1 + 2 E(h/2)(k2 + k3) + k4)
    Stage k1_rot = k1;
    rotate(k1_rot, full_);
    Stage mid = axpy(k2, 1.0, k3);
    rotate(mid, half_);
    y = y_full;
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i].axpy(h / 6.0, k1_rot[i]);
      y[i].axpy(h / 3.0, mid[i]);
      y[i].axpy(h / 6.0, k4[i]);
    }
  } catch (const std::invalid_argument& e) {
    // the only remaining failure is an overflowing product in the forcing
    throw NumericalAbort(std::string("overflow while stepping: ") + e.what(), 0.0);
  }

  for (int c = 0; c < k; ++c) {
    state[c].plus = std::move(y[2 * c]);
    state[c].minus = std::move(y[2 * c + 1]);
    if (!state[c].plus.all_finite() || !state[c].minus.all_finite())
      throw NumericalAbort("non-finite coefficients after step", 0.0);
  }
}

HalfWaveState step_exponential(const HalfWaveState& state, const MassSystem& system, double dt) {
  if (state.empty()) throw std::invalid_argument("step_exponential: empty state");
  LawsonStepper stepper(system, state.front().plus.lattice_ptr(), dt);
  HalfWaveState next = state;
  stepper.step(next);
  return next;
}

}  // namespace kglab::dynamics
