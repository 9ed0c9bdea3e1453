#include "kglab/harness/resonance_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "kglab/util/random.hpp"

namespace kglab::harness {
namespace {

double norm(const Point& p) { return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); }

Point add(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

Json point_json(const Point& p, int n) {
  Json j = Json::array();
  for (int a = 0; a < n; ++a) j.push_back(p[a]);
  return j;
}

std::vector<std::pair<Point, Point>> build_samples(int n, const ResonanceSweep& sweep) {
  if (n < 1 || n > 3) throw std::invalid_argument("resonance sweep: dimension must be 1, 2 or 3");
  std::vector<double> radii{0.0};
  const double lo = 1.0 / 16.0;
  for (int i = 0; i < sweep.radial_points; ++i)
    radii.push_back(lo * std::pow(sweep.max_norm / lo, static_cast<double>(i) / (sweep.radial_points - 1)));

  std::vector<double> angles;
  if (n == 1) {
    angles = {0.0, std::numbers::pi};
  } else {
    for (int i = 0; i < sweep.angle_points; ++i)
      angles.push_back(std::numbers::pi * i / (sweep.angle_points - 1));
  }

  // rotation invariance: xi on the first axis, eta in the first coordinate plane
  std::vector<std::pair<Point, Point>> out;
  for (double a : radii)
    for (double b : radii)
      for (double th : angles)
        out.push_back({Point{a, 0, 0}, Point{b * std::cos(th), n > 1 ? b * std::sin(th) : 0.0, 0}});

  util::Rng rng(sweep.seed);
  auto random_point = [&] {
    // log-uniform radius covers every scale of the sweep
    const double r = lo * std::pow(sweep.max_norm / lo, rng.uniform());
    Point p{0, 0, 0};
    double s = 0.0;
    do {
      s = 0.0;
      for (int a = 0; a < n; ++a) {
        p[a] = rng.uniform(-1.0, 1.0);
        s += p[a] * p[a];
      }
    } while (s > 1.0 || s < 1e-12);
    const double k = r / std::sqrt(s);
    for (int a = 0; a < n; ++a) p[a] *= k;
    return p;
  };
  for (int i = 0; i < sweep.random_samples; ++i) {
    Point x = random_point();
    Point y = random_point();
    out.push_back({x, y});
  }
  return out;
}

}  // namespace

double modulation_statistic(double mass, const Point& xi1, const Point& xi2) {
  const Point xi3 = add(xi1, xi2);
  const double gap = nonlinear::resonance_function({mass, mass, mass}, xi1, xi2);
  const double low = std::min({norm(xi1), norm(xi2), norm(xi3)});
  return gap * std::sqrt(mass * mass + low * low);
}

VerificationRecord verify_modulation_bound(double mass, int n, const ResonanceSweep& sweep) {
  if (!(mass > 0.0)) throw std::invalid_argument("verify_modulation_bound: mass must be positive");
  const auto samples = build_samples(n, sweep);
  double best = std::numeric_limits<double>::infinity();
  Point arg1{}, arg2{};
  for (const auto& [a, b] : samples) {
    const double v = modulation_statistic(mass, a, b);
    if (v < best) {
      best = v;
      arg1 = a;
      arg2 = b;
    }
  }
  const double t = sweep.max_norm;
  const double collinear = modulation_statistic(mass, {t, 0, 0}, {t, 0, 0});

  constexpr double floor = 0.1;
  VerificationRecord rec;
  rec.name = "modulation_bound";
  rec.parameters = {{"mass", mass}, {"dim", n}, {"max_norm", sweep.max_norm},
                    {"samples", samples.size()}, {"floor", floor}};
  rec.observed = {{"min_statistic", best},
                  {"argmin_xi1", point_json(arg1, n)},
                  {"argmin_xi2", point_json(arg2, n)},
                  {"collinear_at_max_norm", collinear}};
  rec.bound = "(<xi1>+<xi2>-<xi1+xi2>)*<xi_min> >= floor";
  rec.pass = best >= floor;
  rec.seed = sweep.seed;
  return rec;
}

// ---------------------------------------------------------------------------

namespace {

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  double size = std::numeric_limits<double>::infinity();
  Point xi{}, eta{};
  MassTriple triple;
};

bool better(double v, double size, const Candidate& c) {
  if (v < c.value - 1e-15) return true;
  return std::abs(v - c.value) <= 1e-15 && size < c.size;
}

std::vector<MassTriple> assignments(const std::array<double, 3>& m) {
  std::vector<MassTriple> out;
  for (double a : m)
    for (double b : m)
      for (double c : m) {
        MassTriple t{a, b, c};
        const bool seen = std::any_of(out.begin(), out.end(), [&](const MassTriple& s) {
          return s.first == a && s.second == b && s.sum == c;
        });
        if (!seen) out.push_back(t);
      }
  return out;
}

double size_of(const Point& x, const Point& y) {
  const double a = norm(x), b = norm(y);
  return a * a + b * b;
}

}  // namespace

VerificationRecord verify_nonresonance_bound(const std::array<double, 3>& masses, int n,
                                             const ResonanceSweep& sweep,
                                             const NonresonanceSearch& search) {
  const auto check = nonlinear::check_nonresonance(masses);
  const auto triples = assignments(masses);
  const auto samples = build_samples(n, sweep);

  VerificationRecord rec;
  rec.name = "nonresonance_bound";
  rec.parameters = {{"masses", masses}, {"dim", n}, {"max_norm", sweep.max_norm},
                    {"samples", samples.size()}, {"assignments", triples.size()}};
  rec.seed = sweep.seed;

  if (check.holds) {
    const double floor = 0.1 * check.margin;
    Candidate worst;
    for (const auto& t : triples)
      for (const auto& [a, b] : samples) {
        const Point c = add(a, b);
        const double low = std::min({norm(a), norm(b), norm(c)});
        const double v = nonlinear::resonance_function(t, a, b) * std::sqrt(1.0 + low * low);
        if (better(v, size_of(a, b), worst)) worst = {v, size_of(a, b), a, b, t};
      }
    rec.parameters["floor"] = floor;
    rec.observed = {{"condition_holds", true},
                    {"margin", check.margin},
                    {"min_statistic", worst.value},
                    {"argmin_xi", point_json(worst.xi, n)},
                    {"argmin_eta", point_json(worst.eta, n)},
                    {"argmin_masses", {worst.triple.first, worst.triple.second, worst.triple.sum}}};
    rec.bound = "resonance*<xi_min> >= 0.1*(2 min - max)";
    rec.pass = worst.value >= floor;
    return rec;
  }

  // coarse scan, then coordinate descent from the best distinct starts
  std::vector<Candidate> scan;  // best `starts` grid points, ascending
  const std::size_t keep = static_cast<std::size_t>(std::max(1, search.starts));
  for (const auto& t : triples)
    for (const auto& [a, b] : samples) {
      Candidate c{nonlinear::resonance_function(t, a, b), size_of(a, b), a, b, t};
      if (scan.size() == keep && !better(c.value, c.size, scan.back())) continue;
      auto pos = std::find_if(scan.begin(), scan.end(),
                              [&](const Candidate& o) { return better(c.value, c.size, o); });
      scan.insert(pos, c);
      if (scan.size() > keep) scan.pop_back();
    }

  Candidate best;
  for (const auto& start : scan) {
    Candidate cur = start;
    double step = std::max(1.0, std::sqrt(cur.size)) / 4.0;
    int rounds = 0;
    while (step > search.min_step && rounds++ < search.max_rounds) {
      bool moved = false;
      for (int coord = 0; coord < 2 * n; ++coord)
        for (double dir : {-1.0, 1.0}) {
          Candidate trial = cur;
          Point& p = coord < n ? trial.xi : trial.eta;
          p[coord % n] += dir * step;
          trial.value = nonlinear::resonance_function(trial.triple, trial.xi, trial.eta);
          trial.size = size_of(trial.xi, trial.eta);
          if (better(trial.value, trial.size, cur)) {
            cur = trial;
            moved = true;
          }
        }
      if (!moved) step *= 0.5;
    }
    if (better(cur.value, cur.size, best)) best = cur;
  }

  constexpr double tolerance = 1e-6;
  rec.observed = {{"condition_holds", false},
                  {"margin", check.margin},
                  {"min_resonance", best.value},
                  {"argmin_xi", point_json(best.xi, n)},
                  {"argmin_eta", point_json(best.eta, n)},
                  {"argmin_masses", {best.triple.first, best.triple.second, best.triple.sum}}};
  rec.parameters["tolerance"] = tolerance;
  rec.bound = "search reaches resonance <= tolerance when 2 min <= max";
  rec.pass = best.value <= tolerance;
  return rec;
}

}  // namespace kglab::harness
