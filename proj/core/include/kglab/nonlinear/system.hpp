#pragma once

#include <complex>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kglab/spectral/field.hpp"

namespace kglab::nonlinear {

using spectral::Complex;
using spectral::SpectralField;

struct Factor {
  int component = 0;  // zero-based
  bool conjugate = false;
  friend bool operator==(const Factor&, const Factor&) = default;
};

// coefficient * f1 * f2, each factor optionally conjugated
struct Monomial {
  Complex coefficient{1.0, 0.0};
  Factor first;
  Factor second;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

using Polynomial = std::vector<Monomial>;

/**
 * K coupled Klein-Gordon components with masses m_i and homogeneous
 * quadratic right-hand sides N_i.  Immutable once constructed.
 */
class MassSystem {
 public:
  MassSystem(std::vector<double> masses, std::vector<Polynomial> polynomials);

  // K components with N = 0
  static MassSystem linear(std::vector<double> masses);
  // scalar equation with N(u) = coefficient * u^2
  static MassSystem scalar_square(double mass, double coefficient = 1.0);

  int components() const noexcept { return static_cast<int>(masses_.size()); }
  double mass(int i) const { return masses_.at(i); }
  const std::vector<double>& masses() const noexcept { return masses_; }
  const Polynomial& polynomial(int i) const { return polys_.at(i); }
  bool is_linear() const noexcept;
  // every coefficient real and no conjugation: real data stays real
  bool preserves_reality() const noexcept;

  friend bool operator==(const MassSystem&, const MassSystem&) = default;

 private:
  std::vector<double> masses_;
  std::vector<Polynomial> polys_;
};

// Line-oriented definition format:
//   K 2
//   mass 1 1.2
//   term <component> <re> <im> u<j> ~u<k>
// '#' starts a comment.  Components are one-based in the text.
MassSystem parse_system(std::string_view text);
// Shortest round-trip formatting; parse_system(format_system(s)) == s.
std::string format_system(const MassSystem& system);
MassSystem load_system_file(const std::filesystem::path& path);

/**
 * Right-hand sides N_i(u_1..u_K) with the 2/3 rule: inputs truncated to
 * |k_a| <= N/3 on every axis, products formed in physical space, output
 * truncated again.
 */
std::vector<SpectralField> evaluate_nonlinearity(const MassSystem& system,
                                                 std::span<const SpectralField> fields);

// zero every mode outside the 2/3-rule band
SpectralField dealias(const SpectralField& f);

struct NonresonanceCheck {
  bool holds = false;
  double margin = 0.0;  // 2 min - max
};

NonresonanceCheck check_nonresonance(std::span<const double> masses);

struct MassTriple {
  double first = 1.0;
  double second = 1.0;
  double sum = 1.0;  // mass carried by xi + eta
};

using spectral::Point;

// <xi>_m + <eta>_n - <xi + eta>_o, evaluated without cancellation
double resonance_function(const MassTriple& triple, const Point& xi, const Point& eta);

struct ResonanceProbe {
  MassTriple triple;
  std::vector<std::pair<Point, Point>> samples;
  std::vector<double> values;
};

ResonanceProbe probe_resonance(const MassTriple& triple, std::vector<std::pair<Point, Point>> samples);

}  // namespace kglab::nonlinear
