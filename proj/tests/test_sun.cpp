#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "z2h/fd.hpp"
#include "z2h/sun.hpp"

using namespace z2h;

TEST(Legendre, MatchesClosedForms) {
  for (double t : {-0.9, -0.2, 0.0, 0.5, 1.0}) {
    EXPECT_NEAR(legendre(2, t), 0.5 * (3 * t * t - 1), 1e-15);
    EXPECT_NEAR(legendre(3, t), 0.5 * (5 * t * t * t - 3 * t), 1e-15);
    EXPECT_NEAR(legendre(4, t), (35 * std::pow(t, 4) - 30 * t * t + 3) / 8, 1e-14);
  }
  EXPECT_NEAR(legendre(12, 1.0), 1.0, 1e-13);
}

// Property: every zonal polynomial is harmonic on R^3.
TEST(ZonalProperty, ZonalHarmonicsHaveZeroLaplacian) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k <= 6; ++k)
    for (int i = 0; i < 5; ++i) {
      const std::vector<double> x{u(rng), u(rng), u(rng)};
      const ScalarField f = [k](std::span<const double> y) { return zonal(k, y); };
      const double extrapolated = (4.0 * fd_laplacian(f, x, 5e-3) - fd_laplacian(f, x, 1e-2)) / 3.0;
      EXPECT_NEAR(extrapolated, 0.0, 1e-7) << "k = " << k;
    }
  expect_error([] { zonal(13, std::vector<double>{0.0, 0.0, 1.0}); }, ErrorCode::DegreeTooLarge);
}

TEST(Zonal, OnAxisEqualsPower) {
  EXPECT_NEAR(zonal(3, std::vector<double>{0.0, 0.0, 2.0}), 8.0, 1e-14);
  EXPECT_NEAR(ZonalPolynomial::single(2, 2.0).value(1.0, 0.0), -1.0, 1e-15);
}

TEST(Cutoff, SmoothStepEndpointsAndDerivatives) {
  for (auto profile : {Cutoff::Profile::Quintic, Cutoff::Profile::Cubic}) {
    const Cutoff chi(3.0, 5.0, profile);
    EXPECT_EQ(chi.value(2.0), 0.0);
    EXPECT_EQ(chi.value(6.0), 1.0);
    EXPECT_NEAR(chi.value(4.0), 0.5, 1e-15);
    for (double r : {3.3, 4.1, 4.8}) {
      EXPECT_NEAR(chi.d1(r), (chi.value(r + 1e-6) - chi.value(r - 1e-6)) / 2e-6, 1e-7);
      EXPECT_NEAR(chi.d2(r), (chi.d1(r + 1e-6) - chi.d1(r - 1e-6)) / 2e-6, 1e-6);
    }
  }
}

TEST(DoubleCoverGrid, ChartGeometry) {
  const DoubleCoverGrid g(64, 20.0);
  EXPECT_NEAR(g.half_width(), std::sqrt(21.0), 1e-14);
  EXPECT_NEAR(g.step(), 2.0 * std::sqrt(21.0) / 64, 1e-14);
  EXPECT_NEAR(g.coordinate(31) + g.coordinate(32), 0.0, 1e-14);
  const Cx z{0.3, 0.4};
  EXPECT_NEAR(meridian_s(z), (z * z + 1.0).real(), 1e-15);
  EXPECT_NEAR(meridian_x3(z), (z * z + 1.0).imag(), 1e-15);
  EXPECT_EQ(sheet_of(z), 1);
  EXPECT_EQ(sheet_of(-z), -1);
  int active = 0;
  for (int j = 0; j < 64; ++j)
    for (int i = 0; i < 64; ++i) active += g.node(i, j) == DoubleCoverGrid::Node::Active;
  EXPECT_EQ(active, g.active_count());
}

TEST(RingFit, RecoversLeadingCoefficients) {
  // Re zeta = r^{1/2} cos(theta/2); Re zeta^3 is orthogonal on every ring.
  const auto u = [](Cx z) { return 0.7 * z.real() - 0.2 * z.imag() + 0.3 * (z * z * z).real() + 0.5 * std::norm(z) * z.real(); };
  const auto radii = logspace(1e-4, 0.1, 12);
  const auto a = extract_A1(u, radii);
  EXPECT_NEAR(a.A_plus, 0.7, 1e-10);
  EXPECT_NEAR(a.A_minus, -0.2, 1e-10);
}

TEST(NullCombination, UnitVectorInKernel) {
  const std::vector<LeadingCoefficients> cols{{1.0, 0.2}, {0.5, -0.3}, {-0.4, 0.9}};
  const auto c = null_combination(cols);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(std::hypot(c[0], c[1], c[2]), 1.0, 1e-14);
  double ap = 0.0, am = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    ap += c[i] * cols[i].A_plus;
    am += c[i] * cols[i].A_minus;
  }
  EXPECT_NEAR(ap, 0.0, 1e-14);
  EXPECT_NEAR(am, 0.0, 1e-14);
  EXPECT_GT(*std::max_element(c.begin(), c.end(), [](double x, double y) { return std::abs(x) < std::abs(y); }), 0.0);
  expect_error([&] { null_combination({cols[0], cols[1]}); }, ErrorCode::NoNullDirection);
}

TEST(PoissonSolver, ManufacturedSolutionConvergesAtSecondOrder) {
  const auto study = manufactured_convergence({64, 128}, 20.0);
  ASSERT_EQ(study.orders.size(), 1u);
  EXPECT_GT(study.orders[0], 1.8);
  EXPECT_LT(study.max_errors[1], study.max_errors[0]);
  expect_error([] { require_resolved(32, 20.0, 1e-6); }, ErrorCode::GridTooCoarse);
}

TEST(SunPipeline, SectionsAreOddAcrossSheets) {
  SunParams params;
  params.grid = 128;
  const SunPipeline pipe(params);
  const GridField u = pipe.solve(ZonalPolynomial::single(1));
  const std::vector<double> x{0.8, 0.3, 0.4};
  EXPECT_NEAR(eval_section(u, x, 1), -eval_section(u, x, -1), 1e-12);
  // far outside the shell u = U - V is bounded by the data plus the correction
  EXPECT_TRUE(std::isfinite(eval_section(u, std::vector<double>{0.0, 2.0, 1.0}, 1)));
}

TEST(SunPipeline, ExtractionIsLinear) {
  SunParams params;
  params.grid = 128;
  const SunPipeline pipe(params);
  const auto a0 = extract_A1(pipe.solve(ZonalPolynomial::single(0)));
  const auto a1 = extract_A1(pipe.solve(ZonalPolynomial::single(1)));
  const auto mix = extract_A1(pipe.solve(ZonalPolynomial::single(0, 2.0).plus(ZonalPolynomial::single(1, -0.5))));
  EXPECT_NEAR(mix.A_plus, 2.0 * a0.A_plus - 0.5 * a1.A_plus, 1e-10);
  EXPECT_NEAR(mix.A_minus, 2.0 * a0.A_minus - 0.5 * a1.A_minus, 1e-10);
  EXPECT_NEAR(a0.A_minus, 0.0, 1e-8);
  EXPECT_NEAR(a1.A_plus, 0.0, 1e-8);
}
