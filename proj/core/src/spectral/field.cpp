#include "kglab/spectral/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fft_backend.hpp"

namespace kglab::spectral {

SpectralField::SpectralField(LatticePtr lattice) : lattice_(std::move(lattice)) {
  if (!lattice_) throw std::invalid_argument("SpectralField: null lattice");
  coeffs_.assign(lattice_->size(), Complex{});
}

SpectralField::SpectralField(LatticePtr lattice, std::vector<Complex> coefficients)
    : lattice_(std::move(lattice)), coeffs_(std::move(coefficients)) {
  if (!lattice_) throw std::invalid_argument("SpectralField: null lattice");
  if (coeffs_.size() != lattice_->size())
    throw std::invalid_argument("SpectralField: expected " + std::to_string(lattice_->size()) +
                                " coefficients, got " + std::to_string(coeffs_.size()));
  if (!all_finite()) throw std::invalid_argument("SpectralField: non-finite coefficient");
}

bool SpectralField::all_finite() const noexcept {
  for (const auto& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

void require_same_lattice(const SpectralField& a, const SpectralField& b, const char* where) {
  if (!a.shares_lattice(b)) throw std::invalid_argument(std::string(where) + ": lattice mismatch");
}

SpectralField& SpectralField::operator+=(const SpectralField& rhs) {
  require_same_lattice(*this, rhs, "operator+=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& rhs) {
  require_same_lattice(*this, rhs, "operator-=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(Complex factor) noexcept {
  for (auto& c : coeffs_) c *= factor;
  return *this;
}

SpectralField& SpectralField::axpy(Complex factor, const SpectralField& rhs) {
  require_same_lattice(*this, rhs, "axpy");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += factor * rhs.coeffs_[i];
  return *this;
}

SpectralField SpectralField::conjugated() const {
  SpectralField out(lattice_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    out.coeffs_[i] = std::conj(coeffs_[lattice_->reflected(i)]);
  return out;
}

double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const auto& c : f.coefficients()) s += std::norm(c);
  return std::sqrt(f.lattice().grid().cell_volume() * s);
}

double l2_distance(const SpectralField& a, const SpectralField& b) {
  require_same_lattice(a, b, "l2_distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(a.lattice().grid().cell_volume() * s);
}

Complex inner_product(const SpectralField& a, const SpectralField& b) {
  require_same_lattice(a, b, "inner_product");
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return a.lattice().grid().cell_volume() * s;
}

SpectralField forward_transform(const LatticePtr& lattice, std::span<const Complex> values) {
  if (!lattice) throw std::invalid_argument("forward_transform: null lattice");
  if (values.size() != lattice->size())
    throw std::invalid_argument("forward_transform: expected " + std::to_string(lattice->size()) +
                                " values, got " + std::to_string(values.size()));
  std::vector<Complex> out(values.size());
  detail::execute_dft(lattice->dim(), lattice->points(), detail::Direction::forward, values, out);
  const double scale = 1.0 / std::sqrt(static_cast<double>(values.size()));
  for (auto& c : out) c *= scale;
  return SpectralField(lattice, std::move(out));
}

SpectralField forward_transform(const LatticePtr& lattice, std::span<const double> values) {
  std::vector<Complex> tmp(values.begin(), values.end());
  return forward_transform(lattice, tmp);
}

std::vector<Complex> inverse_transform(const SpectralField& f) {
  std::vector<Complex> out(f.size());
  detail::execute_dft(f.lattice().dim(), f.lattice().points(), detail::Direction::backward,
                      f.coefficients(), out);
  const double scale = 1.0 / std::sqrt(static_cast<double>(f.size()));
  for (auto& c : out) c *= scale;
  return out;
}

}  // namespace kglab::spectral
