#include "kglab/harness/shell.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "kglab/util/parallel.hpp"
#include "kglab/util/random.hpp"

namespace kglab::harness {

void ShellSpec::validate() const {
  if (dim < 3 || dim > 8) throw std::invalid_argument("shell: dimension must be in 3..8");
  for (double v : {r, R, delta, Delta, tube, xi0_norm})
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("shell: parameters must be positive");
  const double cap = std::min({r, R, tube}) / 4.0;
  if (delta > cap || Delta > cap)
    throw std::invalid_argument("shell: thicknesses must not exceed min(r, R, tube)/4");
}

double ShellSpec::bound() const {
  return std::pow(std::min({r, R, tube}), dim - 3) * r * R * delta * Delta / xi0_norm;
}

bool in_shell_intersection(const ShellSpec& s, const std::array<double, 8>& x) {
  double transverse = 0.0;
  for (int a = 1; a < s.dim; ++a) transverse += x[a] * x[a];
  if (transverse > s.tube * s.tube) return false;
  const double near = x[0] * x[0] + transverse;
  const double far = (x[0] - s.xi0_norm) * (x[0] - s.xi0_norm) + transverse;
  const double lo1 = s.r - s.delta, hi1 = s.r + s.delta;
  const double lo2 = s.R - s.Delta, hi2 = s.R + s.Delta;
  return near >= lo1 * lo1 && near <= hi1 * hi1 && far >= lo2 * lo2 && far <= hi2 * hi2;
}

ShellEstimate estimate_shell_volume(const ShellSpec& spec, std::uint64_t samples,
                                    std::uint64_t seed, int strata) {
  spec.validate();
  if (strata < 1) throw std::invalid_argument("shell: strata must be positive");
  ShellEstimate est;
  est.bound = spec.bound();

  // Along the axis, |x|^2 - |x - xi0|^2 = 2 d x1 - d^2 confines x1 to [a, b].
  const double d = spec.xi0_norm;
  const double a = (d * d + std::pow(spec.r - spec.delta, 2) - std::pow(spec.R + spec.Delta, 2)) / (2 * d);
  const double b = (d * d + std::pow(spec.r + spec.delta, 2) - std::pow(spec.R - spec.Delta, 2)) / (2 * d);
  const double c = (a <= 0.0 && b >= 0.0) ? 0.0 : std::min(std::abs(a), std::abs(b));
  const double reach2 = std::pow(spec.r + spec.delta, 2) - c * c;
  if (!(b > a) || reach2 <= 0.0) {
    est.empty = true;
    est.samples = samples;
    return est;
  }
  const double rho = std::min(spec.tube, std::sqrt(reach2));
  const double width = (b - a) / strata;
  const double stratum_volume = width * std::pow(2.0 * rho, spec.dim - 1);
  const std::uint64_t per = std::max<std::uint64_t>(1, samples / static_cast<std::uint64_t>(strata));
  est.samples = per * static_cast<std::uint64_t>(strata);

  std::vector<std::uint64_t> hits(strata, 0);
  util::parallel_for(0, static_cast<std::size_t>(strata), [&](std::size_t s) {
    util::Rng rng(seed, s);
    std::array<double, 8> x{};
    std::uint64_t h = 0;
    for (std::uint64_t i = 0; i < per; ++i) {
      x[0] = a + (static_cast<double>(s) + rng.uniform()) * width;
      for (int k = 1; k < spec.dim; ++k) x[k] = rng.uniform(-rho, rho);
      if (in_shell_intersection(spec, x)) ++h;
    }
    hits[s] = h;
  });

  double var = 0.0;
  for (int s = 0; s < strata; ++s) {
    const double p = static_cast<double>(hits[s]) / per;
    est.volume += stratum_volume * p;
    var += stratum_volume * stratum_volume * p * (1.0 - p) / per;
    est.hits += hits[s];
  }
  est.standard_error = std::sqrt(var);
  est.empty = est.hits == 0;
  return est;
}

namespace {

Json spec_json(const ShellSpec& s) {
  return {{"dim", s.dim},     {"r", s.r},       {"R", s.R},
          {"delta", s.delta}, {"Delta", s.Delta}, {"tube", s.tube},
          {"xi0_norm", s.xi0_norm}};
}

Json estimate_json(const ShellEstimate& e) {
  return {{"volume", e.volume},   {"standard_error", e.standard_error},
          {"bound", e.bound},     {"ratio", e.ratio()},
          {"hits", e.hits},       {"samples", e.samples},
          {"empty", e.empty}};
}

}  // namespace

VerificationRecord shell_intersection_volume(const ShellSpec& spec, std::uint64_t samples,
                                             std::uint64_t seed) {
  const auto est = estimate_shell_volume(spec, samples, seed);
  VerificationRecord rec;
  rec.name = "shell_intersection";
  rec.parameters = spec_json(spec);
  rec.parameters["samples"] = samples;
  rec.observed = estimate_json(est);
  if (est.empty) rec.observed["warning"] = "zero hits: intersection empty, bound holds trivially";
  rec.bound = "volume <= C * min(r,R,L)^(n-3) r R delta Delta / |xi0|";
  rec.pass = est.empty || est.relative_error() < 0.05;
  rec.seed = seed;
  return rec;
}

VerificationRecord shell_sweep(const std::vector<ShellSpec>& cases, std::uint64_t samples,
                               std::uint64_t seed, double slack, double max_rel_error) {
  VerificationRecord rec;
  rec.name = "shell_sweep";
  rec.parameters = {{"cases", cases.size()}, {"samples_per_case", samples},
                    {"slack", slack}, {"max_relative_error", max_rel_error}};
  rec.seed = seed;
  Json rows = Json::array();
  std::vector<double> ratios;
  double worst_error = 0.0;
  int empty = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const std::uint64_t case_seed = util::mix_seed(seed, i);
    const auto est = estimate_shell_volume(cases[i], samples, case_seed);
    Json row = spec_json(cases[i]);
    row.update(estimate_json(est));
    row["seed"] = case_seed;
    rows.push_back(row);
    if (est.empty) {
      ++empty;
      continue;
    }
    ratios.push_back(est.ratio());
    worst_error = std::max(worst_error, est.relative_error());
  }
  const double sp = spread(ratios);
  rec.observed = {{"cases", rows},
                  {"nonempty_cases", ratios.size()},
                  {"empty_cases", empty},
                  {"ratio_min", ratios.empty() ? 0.0 : *std::min_element(ratios.begin(), ratios.end())},
                  {"ratio_max", ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end())},
                  {"ratio_spread", sp},
                  {"worst_relative_error", worst_error}};
  rec.bound = "ratio uniform within slack across non-empty cases";
  rec.pass = !ratios.empty() && sp <= slack && worst_error < max_rel_error;
  return rec;
}

// ---------------------------------------------------------------------------

long long convolution_support_constant(const std::vector<LatticePoint>& a,
                                       const std::vector<LatticePoint>& b) {
  std::map<LatticePoint, long long> count;
  long long best = 0;
  for (const auto& p : a)
    for (const auto& q : b) {
      LatticePoint z{p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]};
      best = std::max(best, ++count[z]);
    }
  return best;
}

VerificationRecord verify_convolution_support(const std::vector<LatticePoint>& a,
                                              const std::vector<LatticePoint>& b, int trials,
                                              std::uint64_t seed) {
  if (a.size() > 10000 || b.size() > 10000)
    throw std::invalid_argument("convolution support: sets limited to 10^4 points");
  const long long constant = convolution_support_constant(a, b);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    util::Rng rng(seed, static_cast<std::uint64_t>(t));
    std::vector<double> ca(a.size()), cb(b.size());
    double na = 0.0, nb = 0.0;
    for (auto& v : ca) {
      v = rng.uniform(-1.0, 1.0);
      na += v * v;
    }
    for (auto& v : cb) {
      v = rng.uniform(-1.0, 1.0);
      nb += v * v;
    }
    std::map<LatticePoint, double> conv;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) {
        const auto& p = a[i];
        const auto& q = b[j];
        conv[{p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]}] += ca[i] * cb[j];
      }
    double nc = 0.0;
    for (const auto& [z, v] : conv) nc += v * v;
    const double denom = std::sqrt(static_cast<double>(constant) * na * nb);
    if (denom > 0.0) worst = std::max(worst, std::sqrt(nc) / denom);
  }
  VerificationRecord rec;
  rec.name = "convolution_support";
  rec.parameters = {{"size_a", a.size()}, {"size_b", b.size()}, {"trials", trials}};
  rec.observed = {{"support_constant", constant}, {"worst_ratio", worst}};
  rec.bound = "||a*b|| <= sqrt(sup |A cap (zeta - B)|) ||a|| ||b||";
  rec.pass = worst <= 1.0 + 1e-12;
  rec.seed = seed;
  return rec;
}

}  // namespace kglab::harness
