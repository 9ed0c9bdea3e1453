#pragma once

#include <string>

#include <boost/rational.hpp>

namespace kglab::harness {

// Positive root of n g^2 - (n + 2) g - 2 = 0.
double strauss_exponent(int n);
double strauss_residual(int n, double gamma);

using Rational = boost::rational<long long>;

// Lebesgue exponent stored through its reciprocal so that infinity is exact.
struct Exponent {
  Rational reciprocal{0};

  static Exponent infinite() { return {Rational(0)}; }
  static Exponent of(long long num, long long den = 1) { return {Rational(den, num)}; }
  bool is_infinite() const { return reciprocal == Rational(0); }
  double value() const;
  std::string str() const;
};

enum class DispersionFamily { klein_gordon, wave };

struct StrichartzResult {
  bool valid = false;
  Rational loss{0};  // 1/q - 1/r + 1/2
  std::string reason;
  double loss_value() const { return boost::rational_cast<double>(loss); }
};

/**
 * Exact check of 2/q + d/r = d/2 with d = n (Klein-Gordon) or n - 1 (wave).
 * Requires 2 <= r < infinity; r = infinity yields valid = false, r < 2 throws.
 */
StrichartzResult strichartz_admissible(int n, Exponent q, Exponent r, DispersionFamily family);

// q solving the scaling relation for given r; throws when r is out of range
// or no q in [2, infinity] exists.
Exponent strichartz_solve_q(int n, Exponent r, DispersionFamily family);

const char* to_string(DispersionFamily family) noexcept;

}  // namespace kglab::harness
