#pragma once

// Independent reference implementations used only by the tests.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace kglab::oracle {

// Maximum over every subset of >= 2 sample positions of the left-to-right sum
// of |v_{k} - v_{k-1}|^p, as its p-th root.  Exponential; n <= ~16.
inline double brute_force_p_variation(const std::vector<double>& v, double p) {
  const std::size_t n = v.size();
  double best = 0.0;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    if (__builtin_popcountl(mask) < 2) continue;
    double sum = 0.0;
    long prev = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1UL << i))) continue;
      if (prev >= 0) sum += std::pow(std::abs(v[i] - v[static_cast<std::size_t>(prev)]), p);
      prev = static_cast<long>(i);
    }
    best = std::max(best, sum);
  }
  return std::pow(best, 1.0 / p);
}

// Naive 1-D DFT with the forward sign convention exp(-2 pi i jk/n).
inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s{};
    for (std::size_t j = 0; j < n; ++j)
      s += x[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * k) / n);
    out[k] = s;
  }
  return out;
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace kglab::oracle
