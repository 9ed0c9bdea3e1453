#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kglab/dynamics/halfwave.hpp"
#include "kglab/spectral/multipliers.hpp"
#include "kglab/util/random.hpp"
#include "kglab/variation/pvariation.hpp"
#include "oracles.hpp"

using namespace kglab::variation;
using kglab::spectral::FrequencyLattice;
using kglab::spectral::LatticePtr;
using kglab::util::Rng;

namespace {

SampledPath<double> scalar_path(std::vector<double> v) {
  SampledPath<double> p;
  for (std::size_t i = 0; i < v.size(); ++i) p.times.push_back(static_cast<double>(i));
  p.values = std::move(v);
  return p;
}

SpectralField random_field(const LatticePtr& lat, Rng& rng) {
  SpectralField f(lat);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!lat->touches_nyquist(i)) f[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  return f;
}

SpaceTimeField free_wave(const SpectralField& phi, Sign sign, double t0, int samples, double dt) {
  SpaceTimeField u;
  for (int j = 0; j < samples; ++j) {
    const double t = t0 + j * dt;
    u.times.push_back(t);
    u.snapshots.push_back(kglab::spectral::free_propagate(phi, t, 1.0, sign));
  }
  return u;
}

}  // namespace

TEST(PVariation, Examples) {
  EXPECT_DOUBLE_EQ(p_variation(scalar_path({0, 1}), 2.0), 1.0);
  EXPECT_DOUBLE_EQ(p_variation(scalar_path({0, 1, 0}), 2.0), std::sqrt(2.0));
  std::vector<double> ramp;
  for (int i = 0; i <= 10; ++i) ramp.push_back(i / 10.0);
  EXPECT_DOUBLE_EQ(p_variation(scalar_path(ramp), 2.0), 1.0);
  EXPECT_DOUBLE_EQ(kglab::oracle::brute_force_p_variation(ramp, 2.0), 1.0);
}

TEST(PVariation, Errors) {
  EXPECT_THROW(p_variation(scalar_path({0, 1}), 0.5), std::invalid_argument);
  EXPECT_THROW(p_variation(scalar_path({0}), 2.0), std::invalid_argument);
  auto one = scalar_path({3.0});
  one.lead_zero = true;
  EXPECT_DOUBLE_EQ(p_variation(one, 2.0), 3.0);
}

TEST(PVariation, MatchesBruteForceExactly) {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const int len = 2 + trial % 11;
    std::vector<double> v;
    for (int i = 0; i < len; ++i) v.push_back(rng.uniform(-2, 2));
    for (double p : {1.0, 1.5, 2.0, 3.7}) EXPECT_EQ(p_variation(scalar_path(v), p), kglab::oracle::brute_force_p_variation(v, p));
  }
}

TEST(PVariation, NonincreasingInP) {
  Rng rng(78);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v;
    for (int i = 0; i < 15; ++i) v.push_back(rng.uniform(-1, 1));
    const auto path = scalar_path(v);
    const double v1 = p_variation(path, 1.0), v2 = p_variation(path, 2.0), v4 = p_variation(path, 4.0);
    EXPECT_GE(v1, v2 - 1e-15);
    EXPECT_GE(v2, v4 - 1e-15);
  }
}

TEST(PVariation, TriangleInequalityOnFields) {
  auto lat = FrequencyLattice::make({1, 4.0, 8});
  Rng rng(79);
  for (int trial = 0; trial < 30; ++trial) {
    SampledPath<SpectralField> a, b, sum;
    for (int i = 0; i < 9; ++i) {
      a.times.push_back(i);
      a.values.push_back(random_field(lat, rng));
      b.values.push_back(random_field(lat, rng));
      sum.values.push_back(a.values.back() + b.values.back());
    }
    b.times = sum.times = a.times;
    EXPECT_LE(p_variation(sum, 2.0), p_variation(a, 2.0) + p_variation(b, 2.0) + 1e-12);
  }
}

TEST(V2Norm, FreeWaveHasDataNorm) {
  auto lat = FrequencyLattice::make({2, 6.0, 8});
  Rng rng(80);
  const auto phi = random_field(lat, rng);
  for (Sign s : {Sign::plus, Sign::minus}) {
    const auto u = free_wave(phi, s, 0.0, 20, 0.1);
    EXPECT_NEAR(v2_pm_norm(u, s, 1.0), l2_norm(phi), 1e-12 * l2_norm(phi));
    // a shifted window sees the same value
    EXPECT_NEAR(v2_pm_norm(free_wave(phi, s, 37.5, 20, 0.1), s, 1.0), l2_norm(phi), 1e-12 * l2_norm(phi));
  }
  SpaceTimeField zero{{0.0, 1.0}, {SpectralField(lat), SpectralField(lat)}};
  EXPECT_EQ(v2_pm_norm(zero, Sign::plus, 1.0), 0.0);
}

TEST(V2Norm, TwoEmissionsLieBetweenMaxAndSum) {
  auto lat = FrequencyLattice::make({1, 2.0 * std::numbers::pi, 8});
  SpectralField phi(lat), psi(lat);
  phi[1] = 1.0;
  psi[2] = 0.7;
  SpaceTimeField u;
  for (int j = 0; j < 40; ++j) {
    const double t = 0.25 * j;
    auto snap = kglab::spectral::free_propagate(phi, t, 1.0, Sign::plus);
    if (t >= 5.0) snap += kglab::spectral::free_propagate(psi, t, 1.0, Sign::plus);
    u.times.push_back(t);
    u.snapshots.push_back(snap);
  }
  const double v = v2_pm_norm(u, Sign::plus, 1.0);
  const double a = l2_norm(phi), b = l2_norm(psi);
  EXPECT_GE(v, std::max(a, b) - 1e-12);
  EXPECT_LE(v, a + b + 1e-12);
  EXPECT_NEAR(v, std::hypot(a, b), 1e-12);  // orthogonal jumps
}

TEST(XsProxy, ZeroAndSingleBand) {
  using namespace kglab::dynamics;
  auto lat = FrequencyLattice::make({1, 2.0 * std::numbers::pi, 32});
  SpectralField phi(lat);
  phi[4] = 1.0;
  const auto sys = MassSystem::linear({1.0});
  // u_t = i<D>u makes the wave a pure plus half-wave
  SpectralField vel(lat);
  vel[4] = Complex(0.0, std::sqrt(17.0));
  const auto run = evolve({{phi}, {vel}}, sys, 2.0, 0.1);
  // |xi| = 4 sits in the N = 4 band only (chi(4/4) - chi(2) = 1)
  const double expected = 4.0 * l2_norm(phi);
  EXPECT_NEAR(xs_proxy_norm(run.trajectory, 0, 1.0), expected, 1e-10 * expected);
  const double s0 = xs_proxy_norm(run.trajectory, 0, 0.0);
  const double s1 = xs_proxy_norm(run.trajectory, 0, 0.5);
  EXPECT_LE(s0, s1);
  const auto zero = evolve({{SpectralField(lat)}, {SpectralField(lat)}}, sys, 1.0, 0.1);
  EXPECT_EQ(xs_proxy_norm(zero.trajectory, 0, 1.0), 0.0);
}

TEST(ModProjection, MatchedFreeWaveHasNoHighModulation) {
  auto lat = FrequencyLattice::make({1, 2.0 * std::numbers::pi, 8});
  SpectralField phi(lat);
  phi[1] = 1.0;
  const auto u = free_wave(phi, Sign::plus, 0.0, 1025, 1.0 / 32);
  for (unsigned m : {1u, 4u, 16u}) {
    const auto rep = check_mod_projection_bound(u, DyadicIndex(m), Sign::plus, 1.0);
    EXPECT_LT(rep.ratio, 0.05) << m;
  }
}

TEST(ModProjection, RejectsCoarseSampling) {
  auto lat = FrequencyLattice::make({1, 2.0 * std::numbers::pi, 8});
  SpectralField phi(lat);
  phi[1] = 1.0;
  const auto u = free_wave(phi, Sign::plus, 0.0, 64, 0.5);
  EXPECT_THROW(check_mod_projection_bound(u, DyadicIndex(8), Sign::plus, 1.0), std::invalid_argument);
}
