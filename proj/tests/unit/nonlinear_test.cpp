#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kglab/nonlinear/system.hpp"
#include "kglab/spectral/multipliers.hpp"
#include "kglab/util/random.hpp"

using namespace kglab::nonlinear;
using kglab::spectral::FrequencyLattice;
using kglab::spectral::LatticePtr;

namespace {

SpectralField band_limited(const LatticePtr& lat, std::uint64_t seed) {
  kglab::util::Rng rng(seed);
  SpectralField f(lat);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (lat->inside_dealias_band(i)) f[i] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  return f;
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST(Nonresonance, Examples) {
  const std::vector<double> equal{1, 1, 1}, edge{1, 1, 2}, mixed{1.0, 1.2, 1.9};
  EXPECT_TRUE(check_nonresonance(equal).holds);
  EXPECT_DOUBLE_EQ(check_nonresonance(equal).margin, 1.0);
  EXPECT_FALSE(check_nonresonance(edge).holds);
  EXPECT_DOUBLE_EQ(check_nonresonance(edge).margin, 0.0);
  EXPECT_TRUE(check_nonresonance(mixed).holds);
  EXPECT_NEAR(check_nonresonance(mixed).margin, 0.1, 1e-15);
  EXPECT_THROW(check_nonresonance(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(check_nonresonance(std::vector<double>{1.0, -1.0}), std::invalid_argument);
}

TEST(Resonance, Examples) {
  EXPECT_EQ(resonance_function({1, 1, 2}, {0, 0, 0}, {0, 0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(resonance_function({1, 1, 1}, {0, 0, 0}, {0, 0, 0}), 1.0);
  EXPECT_NEAR(resonance_function({1, 1, 1}, {1, 0, 0}, {1, 0, 0}), 2 * std::sqrt(2.0) - std::sqrt(5.0), 1e-15);
}

TEST(Resonance, SymmetricInFirstTwoSlotsAndStableAtHighFrequency) {
  kglab::util::Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const Point xi{rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3)};
    const Point eta{rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3), 0.0};
    const double a = resonance_function({1.0, 1.3, 1.7}, xi, eta);
    const double b = resonance_function({1.3, 1.0, 1.7}, eta, xi);
    EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(a)));
  }
  // collinear limit: <t> + <t> - <2t> ~ 3 / (4t), where the naive form cancels badly
  const double t = 1e7;
  EXPECT_NEAR(resonance_function({1, 1, 1}, {t, 0, 0}, {t, 0, 0}) * t, 0.75, 1e-6);
}

TEST(Resonance, ProbeRecordsOneValuePerSample) {
  const auto probe = probe_resonance({1, 1, 1}, {{{0, 0, 0}, {0, 0, 0}}, {{1, 0, 0}, {1, 0, 0}}});
  ASSERT_EQ(probe.values.size(), 2u);
  EXPECT_DOUBLE_EQ(probe.values[0], 1.0);
}

TEST(SystemFile, RoundTripIsBitExact) {
  MassSystem sys({1.0, 0.1 + 0.2}, {{{Complex(1.0 / 3.0, -2e-17), {0, false}, {1, true}}},
                                    {{Complex(-0.7, 0.0), {0, false}, {0, false}},
                                     {Complex(0.0, 1e300), {1, true}, {1, true}}}});
  const auto text = format_system(sys);
  EXPECT_EQ(parse_system(text), sys);
  EXPECT_EQ(format_system(parse_system(text)), text);
}

TEST(SystemFile, ParsesCommentsAndRejectsGarbage) {
  const auto sys = parse_system("# scalar\nK 1\nmass 1.5\nterm 1 2 0 u1 u1  # square\n");
  EXPECT_EQ(sys, MassSystem::scalar_square(1.5, 2.0));
  EXPECT_THROW(parse_system("K 1\nmass 0\n"), std::invalid_argument);
  EXPECT_THROW(parse_system("K 1\nmass 1\nterm 1 1 0 u1\n"), std::invalid_argument);
  EXPECT_THROW(parse_system("K 1\nmass 1\nterm 1 1 0 u1 u2\n"), std::invalid_argument);
  EXPECT_THROW(parse_system("mass 1\n"), std::invalid_argument);
}

TEST(SystemFile, ConstructorValidates) {
  EXPECT_THROW(MassSystem({}, {}), std::invalid_argument);
  EXPECT_THROW(MassSystem({1.0}, {{}, {}}), std::invalid_argument);
  EXPECT_THROW(MassSystem::linear({0.0}), std::invalid_argument);
  EXPECT_TRUE(MassSystem::linear({1.0, 2.0}).is_linear());
  EXPECT_TRUE(MassSystem::scalar_square(1.0).preserves_reality());
  EXPECT_FALSE(MassSystem({1.0}, {{{Complex(0, 1), {0, false}, {0, false}}}}).preserves_reality());
}

TEST(Nonlinearity, ZeroInZeroOut) {
  auto lat = FrequencyLattice::make({2, 8.0, 16});
  std::vector<SpectralField> u{SpectralField(lat)};
  EXPECT_EQ(l2_norm(evaluate_nonlinearity(MassSystem::scalar_square(1.0), u)[0]), 0.0);
}

TEST(Nonlinearity, SingleModeSquares) {
  auto lat = FrequencyLattice::make({1, 2.0 * std::numbers::pi, 32});
  const double root_n = std::sqrt(32.0);
  SpectralField u(lat);
  u[3] = Complex(0.5, 0.25);
  // unitary coefficients: the physical product of c e^{i3x}/sqrt(N) scaled values gives c^2/sqrt(N) at 6
  const auto out = evaluate_nonlinearity(MassSystem::scalar_square(1.0), std::vector{u})[0];
  EXPECT_NEAR(std::abs(out[6] - u[3] * u[3] / root_n), 0.0, 1e-14);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (i != 6) EXPECT_LT(std::abs(out[i]), 1e-14);

  SpectralField high(lat);
  high[9] = 1.0;  // 9 <= 32/3, but 18 is outside the band
  const auto cut = evaluate_nonlinearity(MassSystem::scalar_square(1.0), std::vector{high})[0];
  EXPECT_LT(l2_norm(cut), 1e-14);
}

TEST(Nonlinearity, BilinearIdentity) {
  auto lat = FrequencyLattice::make({2, 8.0, 16});
  const auto u = band_limited(lat, 1), v = band_limited(lat, 2);
  const auto sys = MassSystem::scalar_square(1.0);
  const auto n_sum = evaluate_nonlinearity(sys, std::vector{u + v})[0];
  const auto n_u = evaluate_nonlinearity(sys, std::vector{u})[0];
  const auto n_v = evaluate_nonlinearity(sys, std::vector{v})[0];
  // cross term 2uv via the two-component product u1 u2
  MassSystem cross({1.0, 1.0}, {{{Complex(2.0), {0, false}, {1, false}}}, {}});
  const auto n_cross = evaluate_nonlinearity(cross, std::vector{u, v})[0];
  EXPECT_LE(max_abs_diff(n_sum - n_u - n_v, n_cross), 1e-12);
}

TEST(Nonlinearity, ConjugateFlagUsesReflectedCoefficients) {
  auto lat = FrequencyLattice::make({1, 2.0 * std::numbers::pi, 32});
  SpectralField u(lat);
  u[2] = Complex(1.0, 2.0);
  MassSystem sys({1.0}, {{{Complex(1.0), {0, false}, {0, true}}}});
  // |u|^2 is constant in space
  const auto out = evaluate_nonlinearity(sys, std::vector{u})[0];
  EXPECT_NEAR(out[0].real(), std::norm(u[2]) / std::sqrt(32.0), 1e-14);
  EXPECT_LT(std::abs(out[0].imag()), 1e-15);
  for (std::size_t i = 1; i < out.size(); ++i) EXPECT_LT(std::abs(out[i]), 1e-14);
}

TEST(Nonlinearity, CommutesWithTranslation) {
  auto lat = FrequencyLattice::make({2, 8.0, 16});
  const auto u = band_limited(lat, 7);
  const kglab::spectral::Point shift{0.37, -1.2, 0.0};
  auto translate = [&](const SpectralField& f) {
    SpectralField g = f;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto xi = lat->frequency(i);
      g[i] *= std::polar(1.0, -(xi[0] * shift[0] + xi[1] * shift[1]));
    }
    return g;
  };
  const auto sys = MassSystem::scalar_square(1.0);
  const auto a = evaluate_nonlinearity(sys, std::vector{translate(u)})[0];
  const auto b = translate(evaluate_nonlinearity(sys, std::vector{u})[0]);
  EXPECT_LE(max_abs_diff(a, b), 1e-10);
}

TEST(Nonlinearity, LatticeMismatchThrows) {
  auto a = FrequencyLattice::make({1, 1.0, 8});
  auto b = FrequencyLattice::make({1, 2.0, 8});
  MassSystem cross({1.0, 1.0}, {{{Complex(1.0), {0, false}, {1, false}}}, {}});
  EXPECT_THROW(evaluate_nonlinearity(cross, std::vector{SpectralField(a), SpectralField(b)}),
               std::invalid_argument);
}
