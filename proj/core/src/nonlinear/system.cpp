#include "kglab/nonlinear/system.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kglab::nonlinear {

MassSystem::MassSystem(std::vector<double> masses, std::vector<Polynomial> polynomials)
    : masses_(std::move(masses)), polys_(std::move(polynomials)) {
  if (masses_.empty()) throw std::invalid_argument("mass system: K must be at least 1");
  if (polys_.size() != masses_.size())
    throw std::invalid_argument("mass system: one polynomial per component required");
  for (double m : masses_)
    if (!(m > 0.0) || !std::isfinite(m))
      throw std::invalid_argument("mass system: masses must be positive");
  const int k = components();
  for (const auto& poly : polys_)
    for (const auto& term : poly) {
      if (term.first.component < 0 || term.first.component >= k || term.second.component < 0 ||
          term.second.component >= k)
        throw std::invalid_argument("mass system: factor index out of range");
      if (!std::isfinite(term.coefficient.real()) || !std::isfinite(term.coefficient.imag()))
        throw std::invalid_argument("mass system: non-finite coefficient");
    }
}

MassSystem MassSystem::linear(std::vector<double> masses) {
  std::vector<Polynomial> polys(masses.size());
  return MassSystem(std::move(masses), std::move(polys));
}

MassSystem MassSystem::scalar_square(double mass, double coefficient) {
  Monomial sq{Complex{coefficient, 0.0}, Factor{0, false}, Factor{0, false}};
  return MassSystem({mass}, {Polynomial{sq}});
}

bool MassSystem::is_linear() const noexcept {
  return std::all_of(polys_.begin(), polys_.end(), [](const auto& p) { return p.empty(); });
}

bool MassSystem::preserves_reality() const noexcept {
  for (const auto& poly : polys_)
    for (const auto& t : poly)
      if (t.coefficient.imag() != 0.0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// text format

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_real(std::string_view tok, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw std::invalid_argument("system file line " + std::to_string(line) + ": bad number '" +
                                std::string(tok) + "'");
  return v;
}

int parse_int(std::string_view tok, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw std::invalid_argument("system file line " + std::to_string(line) + ": bad integer '" +
                                std::string(tok) + "'");
  return v;
}

Factor parse_factor(std::string_view tok, int line) {
  Factor f;
  if (!tok.empty() && tok.front() == '~') {
    f.conjugate = true;
    tok.remove_prefix(1);
  }
  if (tok.size() < 2 || tok.front() != 'u')
    throw std::invalid_argument("system file line " + std::to_string(line) +
                                ": factor must look like u<j> or ~u<j>");
  f.component = parse_int(tok.substr(1), line) - 1;
  return f;
}

std::string format_factor(const Factor& f) {
  return (f.conjugate ? "~u" : "u") + std::to_string(f.component + 1);
}

}  // namespace

MassSystem parse_system(std::string_view text) {
  int k = -1;
  std::vector<double> masses;
  std::vector<std::pair<int, Monomial>> terms;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const std::string& key = tok[0];
    if (key == "K") {
      if (tok.size() != 2) throw std::invalid_argument("system file: 'K' takes one value");
      k = parse_int(tok[1], line_no);
    } else if (key == "mass") {
      for (std::size_t i = 1; i < tok.size(); ++i) masses.push_back(parse_real(tok[i], line_no));
    } else if (key == "term") {
      if (tok.size() != 6)
        throw std::invalid_argument("system file line " + std::to_string(line_no) +
                                    ": term needs component, re, im and two factors");
      Monomial m;
      const int target = parse_int(tok[1], line_no) - 1;
      m.coefficient = Complex{parse_real(tok[2], line_no), parse_real(tok[3], line_no)};
      m.first = parse_factor(tok[4], line_no);
      m.second = parse_factor(tok[5], line_no);
      terms.emplace_back(target, m);
    } else {
      throw std::invalid_argument("system file line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }
  if (k < 1) throw std::invalid_argument("system file: missing or invalid 'K'");
  if (static_cast<int>(masses.size()) != k)
    throw std::invalid_argument("system file: expected " + std::to_string(k) + " masses");
  std::vector<Polynomial> polys(k);
  for (auto& [target, m] : terms) {
    if (target < 0 || target >= k) throw std::invalid_argument("system file: term target out of range");
    polys[target].push_back(m);
  }
  return MassSystem(std::move(masses), std::move(polys));
}

std::string format_system(const MassSystem& system) {
  std::ostringstream out;
  out << "K " << system.components() << "\nmass";
  for (double m : system.masses()) out << ' ' << shortest(m);
  out << '\n';
  for (int i = 0; i < system.components(); ++i)
    for (const auto& t : system.polynomial(i))
      out << "term " << i + 1 << ' ' << shortest(t.coefficient.real()) << ' '
          << shortest(t.coefficient.imag()) << ' ' << format_factor(t.first) << ' '
          << format_factor(t.second) << '\n';
  return out.str();
}

MassSystem load_system_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open system file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

// ---------------------------------------------------------------------------
// nonlinearity

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  const auto& lattice = f.lattice();
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!lattice.inside_dealias_band(i)) out[i] = Complex{};
  return out;
}

std::vector<SpectralField> evaluate_nonlinearity(const MassSystem& system,
                                                 std::span<const SpectralField> fields) {
  const int k = system.components();
  if (static_cast<int>(fields.size()) != k)
    throw std::invalid_argument("evaluate_nonlinearity: expected one field per component");
  for (int i = 1; i < k; ++i) require_same_lattice(fields[0], fields[i], "evaluate_nonlinearity");

  std::vector<SpectralField> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) out.emplace_back(fields[0].lattice_ptr());
  if (system.is_linear()) return out;

  // physical values of the truncated inputs, computed on first use
  std::vector<std::vector<Complex>> physical(k);
  auto values_of = [&](int j) -> const std::vector<Complex>& {
    if (physical[j].empty()) physical[j] = inverse_transform(dealias(fields[j]));
    return physical[j];
  };

  const std::size_t n = fields[0].size();
  std::vector<Complex> product(n);
  for (int i = 0; i < k; ++i) {
    const auto& poly = system.polynomial(i);
    if (poly.empty()) continue;
    std::fill(product.begin(), product.end(), Complex{});
    for (const auto& term : poly) {
      const auto& a = values_of(term.first.component);
      const auto& b = values_of(term.second.component);
      for (std::size_t x = 0; x < n; ++x) {
        const Complex fa = term.first.conjugate ? std::conj(a[x]) : a[x];
        const Complex fb = term.second.conjugate ? std::conj(b[x]) : b[x];
        product[x] += term.coefficient * fa * fb;
      }
    }
    out[i] = dealias(forward_transform(fields[0].lattice_ptr(), product));
  }
  return out;
}

// ---------------------------------------------------------------------------
// resonance

NonresonanceCheck check_nonresonance(std::span<const double> masses) {
  if (masses.empty()) throw std::invalid_argument("check_nonresonance: empty mass list");
  for (double m : masses)
    if (!(m > 0.0)) throw std::invalid_argument("check_nonresonance: masses must be positive");
  const auto [lo, hi] = std::minmax_element(masses.begin(), masses.end());
  const double margin = 2.0 * *lo - *hi;
  return {margin > 0.0, margin};
}

namespace {

double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double cross_norm2(const Point& a, const Point& b) {
  const double c0 = a[1] * b[2] - a[2] * b[1];
  const double c1 = a[2] * b[0] - a[0] * b[2];
  const double c2 = a[0] * b[1] - a[1] * b[0];
  return c0 * c0 + c1 * c1 + c2 * c2;
}

}  // namespace

double resonance_function(const MassTriple& t, const Point& xi, const Point& eta) {
  if (!(t.first > 0.0 && t.second > 0.0 && t.sum > 0.0))
    throw std::invalid_argument("resonance_function: masses must be positive");
  const Point zeta{xi[0] + eta[0], xi[1] + eta[1], xi[2] + eta[2]};
  const double a2 = dot(xi, xi), b2 = dot(eta, eta);
  const double a = std::sqrt(t.first * t.first + a2);
  const double b = std::sqrt(t.second * t.second + b2);
  const double c = std::sqrt(t.sum * t.sum + dot(zeta, zeta));
  const double ab = dot(xi, eta);
  // <xi><eta> - xi.eta, rationalized when the two terms nearly cancel
  double gap;
  if (ab <= 0.0) {
    gap = a * b - ab;
  } else {
    const double m2 = t.first * t.first, n2 = t.second * t.second;
    gap = (m2 * n2 + m2 * b2 + n2 * a2 + cross_norm2(xi, eta)) / (a * b + ab);
  }
  const double numer =
      t.first * t.first + t.second * t.second - t.sum * t.sum + 2.0 * gap;
  return numer / (a + b + c);
}

ResonanceProbe probe_resonance(const MassTriple& triple,
                               std::vector<std::pair<Point, Point>> samples) {
  ResonanceProbe probe{triple, std::move(samples), {}};
  probe.values.reserve(probe.samples.size());
  for (const auto& [xi, eta] : probe.samples)
    probe.values.push_back(resonance_function(triple, xi, eta));
  return probe;
}

}  // namespace kglab::nonlinear
