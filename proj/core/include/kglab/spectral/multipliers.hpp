#pragma once

#include <cmath>
#include <vector>

#include "kglab/spectral/field.hpp"

namespace kglab::spectral {

// Smooth cutoff equal to 1 on [-1, 1], supported in (-2, 2).
double bump(double t) noexcept;
// Annular cutoff psi_N(t) = bump(t/N) - bump(2t/N); psi_0(t) = bump(2t).
double dyadic_cutoff(double t, DyadicIndex n) noexcept;
// Sum of dyadic_cutoff over all labels strictly below n (0 for n = 0).
double dyadic_cutoff_below(double t, DyadicIndex n) noexcept;

inline double japanese_bracket(double mass, double norm_squared) noexcept {
  return std::sqrt(mass * mass + norm_squared);
}

void require_positive_mass(double mass);

// Applies a symbol depending on |xi|^2 only.
template <class Symbol>
SpectralField apply_radial(const SpectralField& f, Symbol&& symbol) {
  SpectralField out = f;
  auto c = out.coefficients();
  auto n2 = f.lattice().norms_squared();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= symbol(n2[i]);
  return out;
}

SpectralField bracket_multiplier(const SpectralField& f, double mass, double power);
SpectralField lp_project(const SpectralField& f, DyadicIndex n);
// dyadic labels needed for the partition of unity to be exact on this lattice
std::vector<DyadicIndex> lp_bands(const FrequencyLattice& lattice);
double sobolev_norm(const SpectralField& f, double s, double mass);
SpectralField free_propagate(const SpectralField& f, double t, double mass, Sign sign);

}  // namespace kglab::spectral
