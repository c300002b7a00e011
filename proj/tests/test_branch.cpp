#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "z2h/branch.hpp"
#include "z2h/complex.hpp"
#include "z2h/defining_function.hpp"

using namespace z2h;

namespace {

Polyline circle4(Cx z_centre, Cx w_centre, double radius, bool around_z, std::size_t n = 64) {
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const Cx e = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
    const Cx z = around_z ? z_centre + e : z_centre, w = around_z ? w_centre : w_centre + e;
    pts.push_back({z.real(), z.imag(), w.real(), w.imag()});
  }
  return Polyline::from_points(pts, true);
}

Polyline circle2(Cx centre, double radius, std::size_t n = 64) {
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const Cx z = centre + std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
    pts.push_back({z.real(), z.imag()});
  }
  return Polyline::from_points(pts, true);
}

}  // namespace

TEST(PrincipalSqrt, NegativeRealAxisConvention) {
  EXPECT_NEAR(std::abs(principal_sqrt(Cx{-4.0, 0.0}) - Cx{0.0, 2.0}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(principal_sqrt(Cx{-4.0, -0.0}) - Cx{0.0, 2.0}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(principal_sqrt(Cx{-4.0, -1e-12}) - Cx{0.0, -2.0}), 0.0, 1e-12);
}

TEST(PrincipalSqrt, HalfPowerMatchesLogExp) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const Cx v{u(rng), u(rng)};
    const Cx oracle = std::exp(1.5 * std::log(v));
    EXPECT_NEAR(std::abs(principal_half_power(v, {}) - oracle), 0.0, 1e-12 * std::abs(oracle));
  }
  expect_error([] { principal_half_power(Cx{0.0, 0.0}, {}); }, ErrorCode::ZeroBase);
}

TEST(Continuation, MeridiansOfBothAxesFlipSign) {
  const auto h = DefiningFunction::node(0.0, 0.0, 0.0).field();
  EXPECT_EQ(monodromy(h, circle4({0.0, 0.0}, {1.0, 0.0}, 0.1, true)), -1);
  EXPECT_EQ(monodromy(h, circle4({1.0, 0.0}, {0.0, 0.0}, 0.1, false)), -1);
  EXPECT_EQ(monodromy(h, circle4({1.0, 0.0}, {1.0, 0.0}, 0.1, true)), 1);
}

TEST(Continuation, SquaredProductHasTrivialMonodromy) {
  const auto h = DefiningFunction::bivariate({{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}).field();
  EXPECT_EQ(monodromy(h, circle4({0.0, 0.0}, {1.0, 0.0}, 0.1, true)), 1);
  EXPECT_EQ(winding_number(h, circle4({0.0, 0.0}, {1.0, 0.0}, 0.1, true)), 2);
}

TEST(Continuation, EndStateOnOppositeSheet) {
  const auto h = DefiningFunction::univariate({Cx{-0.5, 0.0}, 1.0}).field();
  const auto loop = circle2({0.5, 0.0}, 0.2);
  const BranchState start = principal_state(h, loop.point(0));
  const BranchState end = continue_branch(h, loop, start);
  EXPECT_NEAR(std::abs(end.sqrt_value + start.sqrt_value), 0.0, 1e-12);
  EXPECT_EQ(end.sign, -start.sign);
}

TEST(Continuation, PathThroughBranchLocusThrows) {
  const auto h = DefiningFunction::univariate({0.0, 1.0}).field();
  const auto path = Polyline::from_points({{-1.0, 0.0}, {1.0, 0.0}}, false);
  expect_error([&] { continue_branch(h, path, principal_state(h, path.point(0))); }, ErrorCode::PathHitsBranchLocus);
  expect_error([&] { principal_state(h, std::vector<double>{0.0, 0.0}); }, ErrorCode::OnBranchLocus);
}

TEST(Continuation, TraceStepsStayBelowQuarterTurn) {
  const auto h = DefiningFunction::univariate({0.0, 0.0, 0.0, 1.0}).field();
  const auto loop = circle2({0.0, 0.0}, 0.5, 4);
  const auto steps = trace_branch(h, loop, principal_state(h, loop.point(0)));
  ASSERT_GT(steps.size(), 4u);
  for (std::size_t i = 1; i < steps.size(); ++i)
    EXPECT_LT(std::abs(std::arg(steps[i].h_value / steps[i - 1].h_value)), std::numbers::pi / 2);
  EXPECT_EQ(steps.back().sign, -1);
}

// Chords of a square around 0 turn arg z^3 by 3 pi / 2 while the endpoint
// ratio shows -pi / 2.
TEST(Continuation, ChordsThatWindMostOfATurnAreRefined) {
  const auto h = DefiningFunction::univariate({0.0, 0.0, 0.0, 1.0}).field();
  const auto square = Polyline::from_points({{0.5, 0.0}, {1e-17, 0.5}, {-0.5, 1e-17}, {-1e-17, -0.5}}, true);
  EXPECT_EQ(monodromy(h, square), -1);
  EXPECT_EQ(winding_number(h, square), 3);
}

// Property: the sign after a closed loop is (-1)^(winding of h).
TEST(ContinuationProperty, MonodromyMatchesWindingParity) {
  const auto h = DefiningFunction::univariate({Cx{0.1, 0.2}, Cx{-0.3, 0.0}, Cx{0.0, 0.4}, 1.0}).field();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> c(-1.5, 1.5), r(0.05, 1.5);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    const auto loop = circle2({c(rng), c(rng)}, r(rng), 128);
    try {
      const int w = winding_number(h, loop);
      EXPECT_EQ(monodromy(h, loop), w % 2 == 0 ? 1 : -1);
      EXPECT_EQ(monodromy(h, loop.refined(2)), monodromy(h, loop));
      ++checked;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::PathHitsBranchLocus);
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(ContinuationProperty, ReversedLoopGivesSameSign) {
  const auto h = DefiningFunction::ramified_cover(1.0).field();
  const auto loop = circle4({-1.0, 0.0}, {0.0, 0.0}, 0.2, true);
  EXPECT_EQ(monodromy(h, loop), monodromy(h, loop.reversed()));
}
