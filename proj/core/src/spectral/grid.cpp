#include "kglab/spectral/grid.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kglab::spectral {

void GridSpec::validate() const {
  if (dim < 1 || dim > 3) throw std::invalid_argument("grid: dim must be 1, 2 or 3");
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw std::invalid_argument("grid: box_length must be positive");
  if (points_per_axis < 8 || points_per_axis % 2 != 0)
    throw std::invalid_argument("grid: points_per_axis must be even and >= 8, got " +
                                std::to_string(points_per_axis));
}

std::size_t GridSpec::node_count() const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points_per_axis);
  return n;
}

double GridSpec::cell_volume() const { return std::pow(spacing(), dim); }

FrequencyLattice::FrequencyLattice(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  const int n = grid_.points_per_axis;
  fundamental_ = 2.0 * std::numbers::pi / grid_.box_length;
  axis_.resize(n);
  for (int j = 0; j < n; ++j) axis_[j] = fundamental_ * wavenumber(j);

  const std::size_t total = grid_.node_count();
  norm2_.resize(total);
  reflect_.resize(total);
  for (std::size_t node = 0; node < total; ++node) {
    auto k = wavenumbers(node);
    double s = 0.0;
    Wavenumbers mirrored{0, 0, 0};
    for (int a = 0; a < grid_.dim; ++a) {
      double xi = fundamental_ * k[a];
      s += xi * xi;
      mirrored[a] = k[a] == -n / 2 ? k[a] : -k[a];
    }
    norm2_[node] = s;
    reflect_[node] = node_of(mirrored);
    if (s > max_norm_ * max_norm_) max_norm_ = std::sqrt(s);
  }
}

std::shared_ptr<const FrequencyLattice> FrequencyLattice::make(const GridSpec& grid) {
  return std::make_shared<const FrequencyLattice>(grid);
}

Wavenumbers FrequencyLattice::wavenumbers(std::size_t node) const noexcept {
  Wavenumbers k{0, 0, 0};
  const auto n = static_cast<std::size_t>(points());
  for (int a = grid_.dim - 1; a >= 0; --a) {
    k[a] = wavenumber(static_cast<int>(node % n));
    node /= n;
  }
  return k;
}

Point FrequencyLattice::frequency(std::size_t node) const noexcept {
  auto k = wavenumbers(node);
  return {fundamental_ * k[0], fundamental_ * k[1], fundamental_ * k[2]};
}

std::size_t FrequencyLattice::node_of(const Wavenumbers& k) const {
  const int n = points();
  std::size_t node = 0;
  for (int a = 0; a < grid_.dim; ++a) {
    if (k[a] < -n / 2 || k[a] >= n / 2) throw std::out_of_range("lattice: wavenumber out of range");
    node = node * n + static_cast<std::size_t>(k[a] < 0 ? k[a] + n : k[a]);
  }
  return node;
}

bool FrequencyLattice::touches_nyquist(std::size_t node) const noexcept {
  auto k = wavenumbers(node);
  for (int a = 0; a < grid_.dim; ++a)
    if (k[a] == -points() / 2) return true;
  return false;
}

bool FrequencyLattice::inside_dealias_band(std::size_t node) const noexcept {
  auto k = wavenumbers(node);
  const int cap = points() / 3;
  for (int a = 0; a < grid_.dim; ++a)
    if (std::abs(k[a]) > cap) return false;
  return true;
}

DyadicIndex::DyadicIndex(unsigned long long value) : value_(value) {
  if (value != 0 && !std::has_single_bit(value))
    throw std::invalid_argument("dyadic index must be 0 or a power of two, got " +
                                std::to_string(value));
}

DyadicIndex DyadicIndex::from_exponent(int k) {
  if (k < 0 || k > 62) throw std::invalid_argument("dyadic exponent out of range");
  return DyadicIndex(1ULL << k);
}

DyadicIndex DyadicIndex::next() const { return DyadicIndex(value_ == 0 ? 1 : value_ * 2); }

std::vector<DyadicIndex> dyadic_range(double top) {
  std::vector<DyadicIndex> out{DyadicIndex(0), DyadicIndex(1)};
  while (out.back().as_double() < top) out.push_back(out.back().next());
  return out;
}

const char* to_string(Sign s) noexcept { return s == Sign::plus ? "+" : "-"; }

}  // namespace kglab::spectral
