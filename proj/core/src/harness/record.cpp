#include "kglab/harness/record.hpp"

#include <algorithm>
#include <limits>

namespace kglab::harness {

Json VerificationRecord::to_json() const {
  Json j;
  j["name"] = name;
  j["parameters"] = parameters;
  j["observed"] = observed;
  j["bound"] = bound;
  j["pass"] = pass;
  j["seed"] = seed;
  return j;
}

std::string VerificationRecord::to_line() const { return to_json().dump(); }

double spread(const std::vector<double>& values) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double v : values)
    if (v > 0.0) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  return hi > 0.0 ? hi / lo : 0.0;
}

}  // namespace kglab::harness
