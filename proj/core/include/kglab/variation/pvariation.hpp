#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "kglab/dynamics/halfwave.hpp"
#include "kglab/spectral/modulation.hpp"
#include "kglab/util/parallel.hpp"

namespace kglab::variation {

using spectral::DyadicIndex;
using spectral::Sign;
using spectral::SpaceTimeField;
using spectral::SpectralField;

template <class T>
struct SampledPath {
  std::vector<double> times;
  std::vector<T> values;
  bool lead_zero = false;  // logically prepend v = 0 before the first sample
};

// Symmetric table of pairwise distances d(i, j), i < j.
class DistanceTable {
 public:
  explicit DistanceTable(std::size_t n) : n_(n), d_(n * n, 0.0) {}
  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) noexcept { d_[i * n_ + j] = d_[j * n_ + i] = v; }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

/**
 * Supremum over partitions of the sample grid of sum |v(t_k) - v(t_{k-1})|^p,
 * returned as its p-th root.  best[j] = max_{i<j} best[i] + d(i, j)^p.
 */
double p_variation(const DistanceTable& table, double p);

template <class T, class Distance>
double p_variation(const SampledPath<T>& path, double p, Distance&& distance, const T& zero) {
  if (!(p >= 1.0)) throw std::invalid_argument("p_variation: p must be >= 1");
  if (path.times.size() != path.values.size())
    throw std::invalid_argument("p_variation: times and values misaligned");
  std::vector<const T*> seq;
  if (path.lead_zero) seq.push_back(&zero);
  for (const auto& v : path.values) seq.push_back(&v);
  if (seq.size() < 2) throw std::invalid_argument("p_variation: need at least 2 effective samples");
  DistanceTable table(seq.size());
  util::parallel_for(0, seq.size(), [&](std::size_t i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) table.set(i, j, distance(*seq[i], *seq[j]));
  });
  return p_variation(table, p);
}

double p_variation(const SampledPath<double>& path, double p);
double p_variation(const SampledPath<SpectralField>& path, double p);

// V^2 norm of exp(-/+ i t <D>) u(t) with the prepended zero
double v2_pm_norm(const SpaceTimeField& u, Sign sign, double mass);
// same, for the half of the given sign of one trajectory component
double v2_pm_norm(const dynamics::Trajectory& traj, int component, Sign sign);

SpaceTimeField half_wave_field(const dynamics::Trajectory& traj, int component, Sign sign);

// (sum over bands and both halves of max(N,1)^{2s} v2_pm_norm(P_N u)^2)^(1/2)
double xs_proxy_norm(const dynamics::Trajectory& traj, int component, double s);

struct ModProjectionReport {
  DyadicIndex modulation;
  double projected_norm = 0.0;  // space-time L2 norm of the projected field
  double v2_norm = 0.0;
  double ratio = 0.0;           // projected_norm * sqrt(M) / v2_norm
};

// Throws when 2M reaches the temporal Nyquist frequency.
ModProjectionReport check_mod_projection_bound(const SpaceTimeField& u, DyadicIndex m, Sign sign,
                                               double mass,
                                               spectral::TemporalWindow window =
                                                   spectral::TemporalWindow::hann);

}  // namespace kglab::variation
