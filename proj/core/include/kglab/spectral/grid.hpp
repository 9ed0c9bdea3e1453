#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace kglab::spectral {

// Periodic box [0, box_length)^dim sampled with points_per_axis nodes per axis.
struct GridSpec {
  int dim = 1;
  double box_length = 1.0;
  int points_per_axis = 8;

  void validate() const;
  std::size_t node_count() const;
  double spacing() const { return box_length / points_per_axis; }
  double cell_volume() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

using Wavenumbers = std::array<int, 3>;
using Point = std::array<double, 3>;

/**
 * Lattice of Fourier frequencies 2*pi*k/box_length for k in [-N/2, N/2) on
 * each axis.  Nodes are stored row-major in FFT order, axis 0 slowest, so the
 * node index matches the physical grid index used by the transforms.
 */
class FrequencyLattice {
 public:
  explicit FrequencyLattice(const GridSpec& grid);

  static std::shared_ptr<const FrequencyLattice> make(const GridSpec& grid);

  const GridSpec& grid() const noexcept { return grid_; }
  int dim() const noexcept { return grid_.dim; }
  int points() const noexcept { return grid_.points_per_axis; }
  std::size_t size() const noexcept { return norm2_.size(); }
  double fundamental() const noexcept { return fundamental_; }

  // signed wavenumber of storage position j along one axis
  int wavenumber(int j) const noexcept { return j < points() / 2 ? j : j - points(); }
  std::span<const double> axis_frequencies() const noexcept { return axis_; }

  Wavenumbers wavenumbers(std::size_t node) const noexcept;
  Point frequency(std::size_t node) const noexcept;
  std::size_t node_of(const Wavenumbers& k) const;

  double norm_squared(std::size_t node) const noexcept { return norm2_[node]; }
  std::span<const double> norms_squared() const noexcept { return norm2_; }
  double max_norm() const noexcept { return max_norm_; }

  // true if any axis sits on the unpaired -N/2 mode
  bool touches_nyquist(std::size_t node) const noexcept;
  // true if every axis satisfies |k| <= N/3 (the 2/3-rule keep set)
  bool inside_dealias_band(std::size_t node) const noexcept;
  // node holding frequency -xi (Nyquist axes map to themselves)
  std::size_t reflected(std::size_t node) const noexcept { return reflect_[node]; }

  bool same_as(const FrequencyLattice& other) const noexcept {
    return this == &other || grid_ == other.grid_;
  }

 private:
  GridSpec grid_;
  double fundamental_ = 0.0;
  double max_norm_ = 0.0;
  std::vector<double> axis_;
  std::vector<double> norm2_;
  std::vector<std::size_t> reflect_;
};

using LatticePtr = std::shared_ptr<const FrequencyLattice>;

// Dyadic label: 0 or an exact power of two.
class DyadicIndex {
 public:
  constexpr DyadicIndex() = default;
  explicit DyadicIndex(unsigned long long value);
  static DyadicIndex from_exponent(int k);

  unsigned long long value() const noexcept { return value_; }
  double as_double() const noexcept { return static_cast<double>(value_); }
  bool is_zero() const noexcept { return value_ == 0; }
  DyadicIndex next() const;
  friend auto operator<=>(const DyadicIndex&, const DyadicIndex&) = default;

 private:
  unsigned long long value_ = 0;
};

// dyadic labels 0, 1, 2, ... up to the smallest power of two >= top
std::vector<DyadicIndex> dyadic_range(double top);

enum class Sign : int { plus = 1, minus = -1 };

constexpr double sign_value(Sign s) noexcept { return s == Sign::plus ? 1.0 : -1.0; }
constexpr Sign flip(Sign s) noexcept { return s == Sign::plus ? Sign::minus : Sign::plus; }
const char* to_string(Sign s) noexcept;

}  // namespace kglab::spectral
