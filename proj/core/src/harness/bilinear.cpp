#include "kglab/harness/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kglab/spectral/field.hpp"
#include "kglab/spectral/multipliers.hpp"
#include "kglab/util/random.hpp"

namespace kglab::harness {

using spectral::Complex;
using spectral::SpectralField;

double BilinearCase::scale() const {
  const double n = dim;
  if (comparable()) return std::sqrt(N.as_double()) * std::pow(O.as_double(), (n - 2.0) / 2.0);
  return std::pow(std::min(M, N).as_double(), (n - 1.0) / 2.0);
}

double BilinearEstimate::mean_normalized() const {
  if (ratios.empty()) return 0.0;
  double s = 0.0;
  for (double r : ratios) s += r;
  return s / static_cast<double>(ratios.size()) / scale;
}

namespace {

// smooth random bump of radius `rad`: bump(2|k|/rad) (1 + small cosine ripples)
struct RandomProfile {
  std::array<std::array<double, 3>, 3> a{};
  std::array<double, 3> phase{};

  explicit RandomProfile(util::Rng& rng) {
    for (auto& row : a)
      for (auto& v : row) v = rng.uniform(-0.3, 0.3);
    for (auto& p : phase) p = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }

  double operator()(const spectral::Point& k, double rad) const {
    const double r = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    double ripple = 1.0;
    for (int j = 0; j < 3; ++j)
      ripple += a[j][0] * std::cos(4.0 * (a[j][1] * k[0] + a[j][2] * k[1]) / rad + phase[j]);
    return spectral::bump(2.0 * r / rad) * ripple;
  }
};

double bracket_at(double mass, const spectral::Point& c, const spectral::Point& k) {
  const double x = c[0] + k[0], y = c[1] + k[1], z = c[2] + k[2];
  return spectral::japanese_bracket(mass, x * x + y * y + z * z);
}

}  // namespace

BilinearEstimate estimate_bilinear(const BilinearCase& c, const BilinearResolution& res) {
  if (c.dim != 3) throw std::invalid_argument("verify_bilinear: only n = 3 is implemented");
  if (c.M.is_zero() || c.N.is_zero() || c.O.is_zero())
    throw std::invalid_argument("verify_bilinear: dyadic labels must be nonzero");
  if (!c.comparable() && 4 * c.M.value() > c.N.value())
    throw std::invalid_argument("verify_bilinear: need M == N or 4M <= N");
  if (res.grid_points < 16 || res.time_points < 3)
    throw std::invalid_argument("verify_bilinear: under-resolved grid");

  const bool packets = c.comparable();
  const double M = c.M.as_double(), N = c.N.as_double(), O = c.O.as_double();
  const double nyquist = packets ? 2.6 * O : 3.2 * M;
  const double window = packets ? 6.0 * N / (O * O) : 18.0 / M;

  spectral::GridSpec grid{3, std::numbers::pi * res.grid_points / nyquist, res.grid_points};
  auto lattice = spectral::FrequencyLattice::make(grid);

  const spectral::Point carrier_u = packets ? spectral::Point{N, 0, 0} : spectral::Point{0, 0, 0};
  const spectral::Point carrier_v = packets ? spectral::Point{-N, 0, 0} : spectral::Point{N, 0, 0};
  const spectral::Point carrier_out{carrier_u[0] + carrier_v[0], 0, 0};
  const double su = spectral::sign_value(c.sign_u), sv = spectral::sign_value(c.sign_v);
  // comparable packets are followed in the rest frame of u
  const double frame = packets ? -su * N / spectral::japanese_bracket(c.mass_u, N * N) : 0.0;

  const std::size_t nodes = lattice->size();
  std::vector<double> omega_u(nodes), omega_v(nodes), cut(nodes);
  const spectral::Point origin{0, 0, 0};
  for (std::size_t i = 0; i < nodes; ++i) {
    const auto k = lattice->frequency(i);
    omega_u[i] = su * (bracket_at(c.mass_u, carrier_u, k) - bracket_at(c.mass_u, carrier_u, origin)) + frame * k[0];
    omega_v[i] = sv * (bracket_at(c.mass_v, carrier_v, k) - bracket_at(c.mass_v, carrier_v, origin)) + frame * k[0];
    const double x = carrier_out[0] + k[0];
    cut[i] = spectral::dyadic_cutoff(std::sqrt(x * x + k[1] * k[1] + k[2] * k[2]), c.O);
  }

  const double dt = 2.0 * window / (res.time_points - 1);
  BilinearEstimate est;
  est.scale = c.scale();
  for (int trial = 0; trial < c.trials; ++trial) {
    util::Rng rng(c.seed, static_cast<std::uint64_t>(trial));
    const RandomProfile prof_u(rng), prof_v(rng);
    SpectralField a(lattice), b(lattice);
    double fastest = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
      const auto k = lattice->frequency(i);
      const double r = std::sqrt(lattice->norm_squared(i));
      a[i] = packets ? prof_u(k, O) : spectral::dyadic_cutoff(r, c.M) * prof_u(k, 4.0 * M);
      b[i] = prof_v(k, packets ? O : M);
      if (a[i] != Complex{}) fastest = std::max(fastest, std::abs(omega_u[i]));
      if (b[i] != Complex{}) fastest = std::max(fastest, std::abs(omega_v[i]));
    }
    if (fastest * dt > 1.0)
      throw std::invalid_argument("verify_bilinear: time sampling under-resolves the phases");
    const double na = spectral::l2_norm(a), nb = spectral::l2_norm(b);
    if (na == 0.0 || nb == 0.0) {
      est.ratios.push_back(0.0);
      continue;
    }

    double integral = 0.0, previous = 0.0;
    for (int j = 0; j < res.time_points; ++j) {
      const double t = -window + dt * j;
      SpectralField at(lattice), bt(lattice);
      for (std::size_t i = 0; i < nodes; ++i) {
        at[i] = a[i] * std::polar(1.0, t * omega_u[i]);
        bt[i] = b[i] * std::polar(1.0, t * omega_v[i]);
      }
      auto pu = spectral::inverse_transform(at);
      const auto pv = spectral::inverse_transform(bt);
      for (std::size_t x = 0; x < nodes; ++x) pu[x] *= pv[x];
      auto w = spectral::forward_transform(lattice, pu);
      for (std::size_t i = 0; i < nodes; ++i) w[i] *= cut[i];
      const double value = std::pow(spectral::l2_norm(w), 2);
      if (j > 0) integral += 0.5 * dt * (value + previous);
      previous = value;
    }
    est.ratios.push_back(std::sqrt(integral) / (na * nb));
  }
  return est;
}

namespace {

Json case_json(const BilinearCase& c) {
  return {{"dim", c.dim},
          {"M", c.M.value()},
          {"N", c.N.value()},
          {"O", c.O.value()},
          {"sign_u", spectral::to_string(c.sign_u)},
          {"sign_v", spectral::to_string(c.sign_v)},
          {"mass_u", c.mass_u},
          {"mass_v", c.mass_v},
          {"trials", c.trials}};
}

}  // namespace

VerificationRecord verify_bilinear(const BilinearCase& c, const BilinearResolution& res) {
  const auto est = estimate_bilinear(c, res);
  VerificationRecord rec;
  rec.name = "bilinear";
  rec.parameters = case_json(c);
  rec.parameters["grid_points"] = res.grid_points;
  rec.parameters["time_points"] = res.time_points;
  rec.observed = {{"ratios", est.ratios}, {"scale", est.scale},
                  {"normalized", est.mean_normalized()}};
  rec.bound = c.comparable() ? "||P_O(uv)|| <= C N^(1/2) O^((n-2)/2) ||phi|| ||psi||"
                             : "||P_O(uv)|| <= C M^((n-1)/2) ||phi|| ||psi||";
  rec.pass = std::all_of(est.ratios.begin(), est.ratios.end(),
                         [](double r) { return std::isfinite(r); });
  rec.seed = c.seed;
  return rec;
}

VerificationRecord bilinear_sweep(const std::string& name, const std::vector<BilinearCase>& cases,
                                  const BilinearResolution& res, double slack, int min_scales) {
  VerificationRecord rec;
  rec.name = name;
  rec.parameters = {{"cases", cases.size()}, {"slack", slack}, {"min_scales", min_scales},
                    {"grid_points", res.grid_points}, {"time_points", res.time_points}};
  Json rows = Json::array();
  std::vector<double> normalized;
  for (const auto& c : cases) {
    const auto est = estimate_bilinear(c, res);
    Json row = case_json(c);
    row["ratios"] = est.ratios;
    row["scale"] = est.scale;
    row["normalized"] = est.mean_normalized();
    row["seed"] = c.seed;
    rows.push_back(row);
    normalized.push_back(est.mean_normalized());
  }
  const double sp = spread(normalized);
  rec.observed = {{"cases", rows}, {"normalized_spread", sp}};
  rec.bound = "normalized ratio uniform within slack across the sweep";
  rec.pass = static_cast<int>(normalized.size()) >= min_scales && sp > 0.0 && sp <= slack;
  rec.seed = cases.empty() ? 0 : cases.front().seed;
  return rec;
}

// ---------------------------------------------------------------------------

std::vector<double> trilinear_ratios(const TrilinearCase& c) {
  if (c.dim != 3) throw std::invalid_argument("verify_trilinear: only n = 3 is implemented");
  if (c.H.is_zero() || c.H_prime.is_zero())
    throw std::invalid_argument("verify_trilinear: H and H' must be nonzero");
  if (!(c.horizon > 0.0)) throw std::invalid_argument("verify_trilinear: horizon must be positive");
  const double top = std::max({c.H, c.H_prime, c.L}).as_double();
  // three factors reach 2*top each; keep their sum clear of the aliasing period
  const double nyquist = 3.2 * top;
  spectral::GridSpec grid{3, std::numbers::pi * c.grid_points / nyquist, c.grid_points};
  auto lattice = spectral::FrequencyLattice::make(grid);
  const std::size_t nodes = lattice->size();

  std::vector<double> omega(nodes);
  for (std::size_t i = 0; i < nodes; ++i)
    omega[i] = spectral::japanese_bracket(c.mass, lattice->norm_squared(i));
  // every factor lives in |xi| < 2 top
  const double fastest = spectral::japanese_bracket(c.mass, 4.0 * top * top);
  const int steps = std::max(16, static_cast<int>(std::ceil(c.horizon * 3.0 * fastest / 0.25)));
  const double dt = c.horizon / steps;
  const double s = std::max(0.5, (c.dim - 2.0) / 2.0);
  const std::array<DyadicIndex, 3> bands{c.L, c.H_prime, c.H};

  std::vector<double> out;
  for (int trial = 0; trial < c.trials; ++trial) {
    util::Rng rng(c.seed, static_cast<std::uint64_t>(trial));
    std::array<SpectralField, 3> data{SpectralField(lattice), SpectralField(lattice), SpectralField(lattice)};
    std::array<double, 3> norms{};
    for (int f = 0; f < 3; ++f) {
      for (std::size_t i = 0; i < nodes; ++i) {
        if (lattice->touches_nyquist(i)) continue;
        const double cutoff = spectral::dyadic_cutoff(std::sqrt(lattice->norm_squared(i)), bands[f]);
        if (cutoff == 0.0) continue;
        data[f][i] = cutoff * std::polar(rng.uniform(0.5, 1.5), rng.uniform(0.0, 2.0 * std::numbers::pi));
      }
      norms[f] = spectral::l2_norm(data[f]);
    }
    if (norms[0] == 0.0 || norms[1] == 0.0 || norms[2] == 0.0) {
      out.push_back(0.0);
      continue;
    }
    const double cell = grid.cell_volume();
    Complex integral{}, previous{};
    for (int j = 0; j <= steps; ++j) {
      const double t = dt * j;
      std::array<std::vector<Complex>, 3> phys;
      for (int f = 0; f < 3; ++f) {
        SpectralField g = data[f];
        const double sg = spectral::sign_value(c.signs[f]);
        for (std::size_t i = 0; i < nodes; ++i) g[i] *= std::polar(1.0, sg * t * omega[i]);
        phys[f] = spectral::inverse_transform(g);
      }
      Complex value{};
      for (std::size_t x = 0; x < nodes; ++x) value += phys[0][x] * phys[1][x] * phys[2][x];
      value *= cell;
      if (j > 0) integral += 0.5 * dt * (value + previous);
      previous = value;
    }
    const double lhs = std::abs(integral) / c.H.as_double();
    const double rhs = std::pow(std::max(c.L.as_double(), 1.0), s) * norms[0] * norms[1] * norms[2];
    out.push_back(lhs / rhs);
  }
  return out;
}

VerificationRecord verify_trilinear(const std::vector<TrilinearCase>& sweep, double slack) {
  VerificationRecord rec;
  rec.name = "trilinear";
  rec.parameters = {{"cases", sweep.size()}, {"slack", slack}};
  Json rows = Json::array();
  std::vector<double> worst;
  for (const auto& c : sweep) {
    const auto ratios = trilinear_ratios(c);
    const double hi = ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
    worst.push_back(hi);
    Json signs = Json::array();
    for (Sign sg : c.signs) signs.push_back(spectral::to_string(sg));
    rows.push_back({{"H", c.H.value()}, {"H_prime", c.H_prime.value()}, {"L", c.L.value()},
                    {"signs", signs}, {"horizon", c.horizon}, {"ratios", ratios},
                    {"phase_spread", spread(ratios)}, {"seed", c.seed}});
  }
  rec.observed = {{"cases", rows}};
  // qualitative: no case may exceed the first case's worst ratio by more than the slack
  rec.bound = "ratio does not grow beyond slack across the sweep";
  rec.pass = !worst.empty() && worst.front() > 0.0 &&
             std::all_of(worst.begin(), worst.end(), [&](double w) {
               return std::isfinite(w) && w <= slack * worst.front();
             });
  rec.seed = sweep.empty() ? 0 : sweep.front().seed;
  return rec;
}

}  // namespace kglab::harness
