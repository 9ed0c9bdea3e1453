#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "kglab/spectral/grid.hpp"

namespace kglab::spectral {

using Complex = std::complex<double>;

/**
 * Fourier coefficients of a periodic field, unitary normalization:
 * c = FFT(u) / sqrt(N_total).  Physical L2 norms carry the lattice measure
 * weight sqrt(cell_volume).
 */
class SpectralField {
 public:
  explicit SpectralField(LatticePtr lattice);
  SpectralField(LatticePtr lattice, std::vector<Complex> coefficients);

  const FrequencyLattice& lattice() const noexcept { return *lattice_; }
  const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  std::span<Complex> coefficients() noexcept { return coeffs_; }
  Complex operator[](std::size_t i) const noexcept { return coeffs_[i]; }
  Complex& operator[](std::size_t i) noexcept { return coeffs_[i]; }

  bool all_finite() const noexcept;
  bool shares_lattice(const SpectralField& other) const noexcept {
    return lattice_->same_as(*other.lattice_);
  }

  SpectralField& operator+=(const SpectralField& rhs);
  SpectralField& operator-=(const SpectralField& rhs);
  SpectralField& operator*=(Complex factor) noexcept;
  // this += factor * rhs
  SpectralField& axpy(Complex factor, const SpectralField& rhs);

  // coefficients of the pointwise complex conjugate: conj(c(-xi))
  SpectralField conjugated() const;

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(Complex s, SpectralField a) { return a *= s; }

 private:
  LatticePtr lattice_;
  std::vector<Complex> coeffs_;
};

void require_same_lattice(const SpectralField& a, const SpectralField& b, const char* where);

// physical L2 norm: sqrt(cell_volume * sum |c|^2)
double l2_norm(const SpectralField& f);
double l2_distance(const SpectralField& a, const SpectralField& b);
// physical inner product <a, b> = integral of conj(a) b
Complex inner_product(const SpectralField& a, const SpectralField& b);

SpectralField forward_transform(const LatticePtr& lattice, std::span<const Complex> values);
SpectralField forward_transform(const LatticePtr& lattice, std::span<const double> values);
std::vector<Complex> inverse_transform(const SpectralField& f);

}  // namespace kglab::spectral
