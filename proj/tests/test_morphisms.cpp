#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "z2h/fd.hpp"
#include "z2h/fiber.hpp"
#include "z2h/laplace_beltrami.hpp"
#include "z2h/linking.hpp"
#include "z2h/smooth_map.hpp"

using namespace z2h;

namespace {

Polyline planar_circle(double cx, double cy, double cz, double radius, int axis, std::size_t n = 256) {
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    const double a = radius * std::cos(t), b = radius * std::sin(t);
    if (axis == 2) pts.push_back({cx + a, cy + b, cz});
    else pts.push_back({cx + a, cy, cz + b});
  }
  return Polyline::from_points(pts, true);
}

}  // namespace

TEST(Hopf, MapsSphereToSphere) {
  const Cx z{0.6, 0.0}, w{0.0, 0.8};
  const auto y = hopf(z, w);
  EXPECT_NEAR(y[0] * y[0] + y[1] * y[1] + y[2] * y[2], 1.0, 1e-15);
  EXPECT_NEAR(y[0], 0.36 - 0.64, 1e-15);
  expect_error([] { hopf(Cx{1.0, 0.0}, Cx{1.0, 0.0}); }, ErrorCode::NotOnSphere);
}

TEST(Hopf, PlaneChartIsWOverZ) {
  const SmoothMap m = hopf_to_plane();
  const Cx z{0.3, 0.4}, w{-0.5, std::sqrt(1.0 - 0.25 - 0.25)};
  const auto xi = m(std::vector<double>{z.real(), z.imag(), w.real(), w.imag()});
  EXPECT_NEAR(std::abs(Cx{xi[0], xi[1]} - w / z), 0.0, 1e-14);
}

TEST(SmoothMap, JacobianMatchesDifferences) {
  for (const SmoothMap& m : {SmoothMap::hopf(), SmoothMap::seifert(2, 3), hopf_to_plane()}) {
    const std::vector<double> x{0.5, -0.3, 0.6, 0.2};
    const auto jac = m.jacobian(x);
    for (int j = 0; j < 4; ++j) {
      auto xp = x, xm = x;
      xp[j] += 1e-6;
      xm[j] -= 1e-6;
      const auto fp = m(xp), fm = m(xm);
      for (int i = 0; i < m.target_dim(); ++i) EXPECT_NEAR(jac(i, j), (fp[i] - fm[i]) / 2e-6, 1e-7);
    }
  }
}

TEST(Fiber, StaysInOneSeifertFiber) {
  const Fiber f = fiber(2, 3, Cx{0.4, -0.9});
  const SmoothMap pi = SmoothMap::seifert(2, 3);
  const auto base = pi(f.at(0.0));
  for (double t : {0.3, 1.7, 4.0, 6.0}) {
    const auto y = pi(f.at(t));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(y[i], base[i], 1e-12);
  }
  EXPECT_NEAR(std::abs(seifert_chart(2, 3, f.z1, f.z2) - Cx{0.4, -0.9}), 0.0, 1e-12);
  EXPECT_EQ(f.winding_pair(), (std::pair{3, 2}));
  expect_error([] { fiber(2, 3, 0.0); }, ErrorCode::SingularFiber);
  expect_error([] { fiber(2, 4, 1.0); }, ErrorCode::InvalidArgument);
}

TEST(Linking, RoundCirclesHopfLink) {
  const auto a = planar_circle(0.0, 0.0, 0.0, 1.0, 2);
  const auto b = planar_circle(1.0, 0.0, 0.0, 1.0, 1);
  EXPECT_NEAR(std::abs(gauss_linking(a, b)), 1.0, 1e-3);
  EXPECT_EQ(std::abs(crossing_linking(a, b)), 1.0);
  const auto far = planar_circle(5.0, 0.0, 0.0, 1.0, 1);
  EXPECT_NEAR(gauss_linking(a, far), 0.0, 1e-3);
  EXPECT_EQ(crossing_linking(a, far), 0.0);
  expect_error([&] { gauss_linking(a, planar_circle(1.0, 0.0, 0.0, 1.0, 2)); }, ErrorCode::CurvesTooClose);
}

// Properties: antisymmetric under reversal, symmetric under swap, and the
// crossing count agrees with the Gauss integral.
TEST(LinkingProperty, SymmetriesAndCrossingOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    const Fiber f = fiber(2, 3, Cx{u(rng), u(rng)});
    const Fiber g = fiber(2, 3, Cx{2.0 * u(rng), 2.0 * u(rng)});
    const auto a = f.sample(512), b = g.sample(512);
    const double lk = s3_gauss_linking(a, b);
    EXPECT_NEAR(std::abs(lk), 6.0, 0.1);
    EXPECT_NEAR(s3_gauss_linking(b, a), lk, 1e-6);
    EXPECT_NEAR(s3_gauss_linking(a.reversed(), b), -lk, 1e-6);
    EXPECT_EQ(s3_crossing_linking(a, b), std::round(lk));
  }
}

TEST(Linking, FiberLinksCoresPAndQTimes) {
  const auto f = fiber(2, 3, Cx{0.7, 0.2}).sample(1024);
  EXPECT_NEAR(std::abs(s3_gauss_linking(f, singular_fiber(2, 3, Core::Z2Zero).sample(1024))), 2.0, 0.05);
  EXPECT_NEAR(std::abs(s3_gauss_linking(f, singular_fiber(2, 3, Core::Z1Zero).sample(1024))), 3.0, 0.05);
}

TEST(CoveringDegree, EqualsQAroundZ2Core) {
  for (auto [p, q] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{1, 1}}) {
    const Fiber core = singular_fiber(p, q, Core::Z2Zero);
    const Fiber near = fiber(p, q, chart_point_for_tube_radius(p, q, 0.1));
    EXPECT_LT(max_distance_to(near.sample(1024), core.sample(1024)), 0.2);
    EXPECT_EQ(std::abs(covering_degree(near, core)), q);
  }
  const Fiber far = fiber(2, 3, 1.0);
  expect_error([&] { covering_degree(far, singular_fiber(2, 3, Core::Z2Zero), 512, 0.2); }, ErrorCode::NotInTube);
}

TEST(LaplaceBeltrami, FlatChartIsEuclideanLaplacian) {
  const ScalarField u = [](std::span<const double> x) { return x[0] * x[0] + 3.0 * x[1] * x[1]; };
  EXPECT_NEAR(laplace_beltrami(MetricChart::flat(2), u, std::vector<double>{0.3, -0.2}, 1e-3), 8.0, 1e-6);
}

TEST(LaplaceBeltrami, LinearFunctionOnS2IsEigenfunction) {
  const MetricChart s2 = MetricChart::round_s2();
  const ScalarField x1 = [](std::span<const double> y) { return y[0]; };
  const std::vector<double> u{0.4, -0.3};
  const auto p = s2.embed(u);
  const double a = laplace_beltrami(s2, x1, u, 1e-2), b = laplace_beltrami(s2, x1, u, 5e-3);
  EXPECT_NEAR((4.0 * b - a) / 3.0, -2.0 * p[0], 1e-7);
}

TEST(LaplaceBeltrami, DegreeTwoHarmonicOnS3) {
  const MetricChart s3 = MetricChart::round_s3();
  const ScalarField q = [](std::span<const double> y) { return y[0] * y[2] - y[1] * y[3]; };
  const std::vector<double> u{0.7, 0.4, 2.1};
  const auto x = s3.embed(u);
  const double a = laplace_beltrami(s3, q, u, 1e-2), b = laplace_beltrami(s3, q, u, 5e-3);
  EXPECT_NEAR((4.0 * b - a) / 3.0, -8.0 * q(x), 1e-7);
  const double c = homogeneous_extension_laplacian(q, x, 1e-2), d = homogeneous_extension_laplacian(q, x, 5e-3);
  EXPECT_NEAR((4.0 * d - c) / 3.0, -8.0 * q(x), 1e-7);
}

TEST(LaplaceBeltrami, HopfPullbackOfHarmonicIsHarmonic) {
  const MetricChart s3 = MetricChart::round_s3();
  const ScalarField u = [](std::span<const double> y) {
    const Cx xi = Cx{y[2], y[3]} / Cx{y[0], y[1]};
    return (xi * xi).real();
  };
  const std::vector<double> p{0.8, 1.0, 0.3};
  const double a = laplace_beltrami(s3, u, p, 1e-2), b = laplace_beltrami(s3, u, p, 5e-3);
  EXPECT_NEAR(observed_order(std::abs(a), std::abs(b)), 2.0, 0.05);
  expect_error([&] { laplace_beltrami(s3, u, std::vector<double>{1e-3, 0.0, 0.0}, 1e-2); }, ErrorCode::ChartBoundary);
}
