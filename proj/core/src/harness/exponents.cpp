#include "kglab/harness/exponents.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kglab::harness {

double strauss_exponent(int n) {
  if (n < 1) throw std::invalid_argument("strauss_exponent: n must be >= 1");
  const double d = n;
  return ((d + 2.0) + std::sqrt(d * d + 12.0 * d + 4.0)) / (2.0 * d);
}

double strauss_residual(int n, double gamma) {
  const double d = n;
  return d * gamma * gamma - (d + 2.0) * gamma - 2.0;
}

double Exponent::value() const {
  return is_infinite() ? std::numeric_limits<double>::infinity()
                       : 1.0 / boost::rational_cast<double>(reciprocal);
}

std::string Exponent::str() const {
  if (is_infinite()) return "inf";
  const Rational v = 1 / reciprocal;
  return v.denominator() == 1 ? std::to_string(v.numerator())
                              : std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

const char* to_string(DispersionFamily family) noexcept {
  return family == DispersionFamily::wave ? "wave" : "kg";
}

namespace {

long long effective_dim(int n, DispersionFamily family) {
  if (n < 1) throw std::invalid_argument("strichartz: dimension must be >= 1");
  return family == DispersionFamily::wave ? n - 1 : n;
}

void require_finite_r(Exponent r) {
  if (r.reciprocal < Rational(0) || r.reciprocal > Rational(1, 2))
    throw std::invalid_argument("strichartz: r must satisfy 2 <= r");
}

}  // namespace

StrichartzResult strichartz_admissible(int n, Exponent q, Exponent r, DispersionFamily family) {
  const long long d = effective_dim(n, family);
  require_finite_r(r);
  StrichartzResult out;
  out.loss = q.reciprocal - r.reciprocal + Rational(1, 2);
  if (r.is_infinite()) {
    out.reason = "r = infinity is outside the admissible range 2 <= r < infinity";
    return out;
  }
  if (q.reciprocal < Rational(0) || q.reciprocal > Rational(1, 2)) {
    out.reason = "q must satisfy 2 <= q <= infinity";
    return out;
  }
  const Rational lhs = 2 * q.reciprocal + d * r.reciprocal;
  const Rational rhs(d, 2);
  out.valid = lhs == rhs;
  if (!out.valid) out.reason = "scaling relation fails";
  return out;
}

Exponent strichartz_solve_q(int n, Exponent r, DispersionFamily family) {
  const long long d = effective_dim(n, family);
  require_finite_r(r);
  if (r.is_infinite()) throw std::invalid_argument("strichartz: r must be finite");
  const Rational q_recip = (Rational(d, 2) - d * r.reciprocal) / 2;
  if (q_recip < Rational(0) || q_recip > Rational(1, 2))
    throw std::invalid_argument("strichartz: no admissible q for r = " + r.str());
  return {q_recip};
}

}  // namespace kglab::harness
