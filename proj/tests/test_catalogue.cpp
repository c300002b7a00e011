#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "support.hpp"
#include "z2h/descriptor.hpp"
#include "z2h/fd.hpp"
#include "z2h/form.hpp"
#include "z2h/sigma.hpp"

using namespace z2h;
using nlohmann::json;

namespace {

Cx half_power_oracle(Cx v, double e) { return std::exp(e * std::log(v)); }

std::vector<double> pt(Cx z, Cx w) { return {z.real(), z.imag(), w.real(), w.imag()}; }

}  // namespace

TEST(DefiningFunction, PartialsMatchComplexDifferences) {
  const std::vector<DefiningFunction> hs{
      DefiningFunction::node(1.0, Cx{0.2, -0.1}, Cx{0.0, 0.3}), DefiningFunction::ramified_cover(Cx{1.0, 0.5}),
      DefiningFunction::product_of_lines({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}),
      DefiningFunction::bivariate({{1.0, Cx{0.0, 2.0}}, {-0.5, 0.0, 3.0}})};
  const Cx z{0.3, -0.7}, w{-0.4, 0.9};
  const double d = 1e-6;
  for (const auto& h : hs) {
    const Cx dz = (h.value(z + d, w) - h.value(z - d, w)) / (2.0 * d);
    const Cx dw = (h.value(z, w + d) - h.value(z, w - d)) / (2.0 * d);
    EXPECT_NEAR(std::abs(h.dz(z, w) - dz), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(h.dw(z, w) - dw), 0.0, 1e-8);
  }
}

TEST(DefiningFunction, SlicedCoefficientsReproduceValue) {
  const auto h = DefiningFunction::node(1.0, 0.5, Cx{0.0, -1.0});
  const Cx z{0.3, 0.2}, w{-1.1, 0.4};
  EXPECT_NEAR(std::abs(poly_value(h.coefficients_in_w(z), w) - h.value(z, w)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(poly_value(h.coefficients_in_z(w), z) - h.value(z, w)), 0.0, 1e-14);
}

TEST(DefiningFunction, RootsOfKnownCubic) {
  // (z - 1)(z - 2i)(z + 0.5) = z^3 + (-0.5 - 2i) z^2 + (-0.5 + i) z + i
  auto roots = poly_roots({Cx{0.0, 1.0}, Cx{-0.5, 1.0}, Cx{-0.5, -2.0}, 1.0});
  ASSERT_EQ(roots.size(), 3u);
  for (Cx expected : {Cx{1.0, 0.0}, Cx{0.0, 2.0}, Cx{-0.5, 0.0}}) {
    double best = 1.0;
    for (Cx r : roots) best = std::min(best, std::abs(r - expected));
    EXPECT_LT(best, 1e-12);
  }
}

TEST(Form, NodeAtOriginPotentialMatchesOracle) {
  const Z2Form f = Z2Form::re_h_power(DefiningFunction::node(0.0, 0.0, 0.0));
  const Cx z{0.6, -0.2}, w{-0.3, 0.8};
  const auto x = pt(z, w);
  EXPECT_NEAR(f.eval_f(f.principal_state(x)), half_power_oracle(z * w, 1.5).real(), 1e-14);
}

TEST(Form, HigherHalfPowerIsHarmonic) {
  const Z2Form f = Z2Form::re_h_power(DefiningFunction::node(1.0, 0.0, 0.0), HalfPower{2});
  const auto x = pt({0.7, 0.1}, {0.9, -0.4});
  const auto u = f.local_potential(f.principal_state(x));
  const double ratio = fd_laplacian(u, x, 1e-2) / fd_laplacian(u, x, 5e-3);
  EXPECT_NEAR(ratio, 4.0, 0.05);
}

TEST(Form, AxialFormMatchesPotentialGradient) {
  const Z2Form f = Z2Form::axial();
  const std::vector<double> x{0.4, -0.7, 1.3};
  const auto s = f.principal_state(x);
  const auto oracle = [](std::span<const double> y) {
    return 2.0 * y[2] * half_power_oracle(Cx{y[0], y[1]}, 1.5).real();
  };
  EXPECT_NEAR(f.eval_f(s), oracle(x), 1e-14);
  const auto g = fd_gradient(oracle, x, 1e-5);
  const Covector om = f.eval_omega(s);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(om[i], g[i], 1e-8);
  const Covector direct = eval_r3_form(x[2], Cx{x[0], x[1]}, 1);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(direct[i], om[i], 1e-14);
}

TEST(Form, PlanarPotentialForLinearPolynomial) {
  const Cx a{0.3, -0.2};
  const Z2Form f = Z2Form::planar(DefiningFunction::univariate({-a, 1.0}));
  ASSERT_TRUE(f.has_potential());
  const std::vector<double> x{-0.5, 0.9};
  const Cx z{x[0], x[1]};
  EXPECT_NEAR(f.eval_f(f.principal_state(x)), (2.0 / 3.0 * half_power_oracle(z - a, 1.5)).real(), 1e-14);
  const Covector om = f.eval_omega(f.principal_state(x));
  const Cx root = half_power_oracle(z - a, 0.5);
  EXPECT_NEAR(om[0], root.real(), 1e-14);
  EXPECT_NEAR(om[1], -root.imag(), 1e-14);
  EXPECT_FALSE(Z2Form::planar(DefiningFunction::univariate({1.0, 0.0, 1.0})).has_potential());
}

TEST(Form, QuadraticDifferentialComponentsAreHarmonic) {
  const Z2Form f = Z2Form::quadratic_differential(DefiningFunction::univariate({-1.0, 0.0, 1.0}));
  const std::vector<double> x{0.2, 0.6};
  const auto om = f.local_omega(f.principal_state(x));
  for (std::size_t i = 0; i < 2; ++i) {
    const ScalarField c = [&om, i](std::span<const double> y) { return om(y)[i]; };
    EXPECT_NEAR(fd_laplacian(c, x, 1e-2) / fd_laplacian(c, x, 5e-3), 4.0, 0.05);
  }
}

TEST(Form, OnBranchLocusThrows) {
  const Z2Form f = Z2Form::re_h_power(DefiningFunction::node(0.0, 0.0, 0.0));
  expect_error([&] { f.principal_state(pt({0.0, 0.0}, {1.0, 0.0})); }, ErrorCode::OnBranchLocus);
}

// Property: Re h^{3/2} of J lines is homogeneous of degree 3J/2.
TEST(FormProperty, LinesPotentialIsHomogeneous) {
  const auto h = DefiningFunction::product_of_lines({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  const Z2Form f = Z2Form::re_h_power(h);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const std::vector<double> x{u(rng), u(rng), u(rng), u(rng)};
    if (distance_to_sigma(h, x) < 0.1) continue;
    const double fx = f.eval_f(f.principal_state(x));
    for (double lambda : {0.1, 3.0}) {
      const std::vector<double> y{lambda * x[0], lambda * x[1], lambda * x[2], lambda * x[3]};
      EXPECT_NEAR(f.eval_f(f.principal_state(y)), std::pow(lambda, 4.5) * fx, 1e-10 * std::pow(lambda, 4.5) * (1 + std::abs(fx)));
    }
  }
}

TEST(Sigma, SamplesOfNodeSatisfyEquation) {
  const auto h = DefiningFunction::node(1.0, 0.0, 0.0);
  const auto curves = sample_sigma(h, Box::cube(4, 1.5), 100);
  std::size_t n = 0;
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.size(); ++i, ++n) EXPECT_LT(std::abs(h(c.point(i))), kSigmaResidual);
  EXPECT_GT(n, 10u);
  expect_error([&] { sample_sigma(DefiningFunction::node(100.0, 0.0, 0.0), Box::cube(4, 1.0), 50); },
               ErrorCode::EmptyIntersection);
}

TEST(Sigma, DistanceToAxesIsExact) {
  const auto h = DefiningFunction::product_of_lines({{1.0, 0.0}, {0.0, 1.0}});
  EXPECT_NEAR(distance_to_sigma(h, pt({0.3, 0.4}, {1.0, 1.0})), 0.5, 1e-14);
  EXPECT_NEAR(distance_to_sigma(h, pt({2.0, 0.0}, {0.0, 0.25})), 0.25, 1e-14);
}

TEST(Sigma, ComplexNormalPushesHAlongPositiveReals) {
  const auto h = DefiningFunction::ramified_cover(1.0);
  const auto pts = smooth_sigma_points(h, Box::cube(4, 1.2), 5, 0.5, 1);
  ASSERT_FALSE(pts.empty());
  for (const auto& x : pts) {
    const auto n = complex_normal(h, x);
    std::vector<double> y(x);
    for (std::size_t i = 0; i < 4; ++i) y[i] += 1e-6 * n[i];
    const Cx dh = h(y) - h(x);
    EXPECT_GT(dh.real(), 0.0);
    EXPECT_LT(std::abs(dh.imag()), 1e-3 * dh.real());
  }
}

TEST(Sigma, TangentConeOfLinesIsScaleInvariant) {
  const auto h = DefiningFunction::product_of_lines({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  const auto unit = collect_points(sigma_on_sphere(h, 1.0, 64));
  auto small = collect_points(sigma_on_sphere(h, 1e-2, 64));
  for (auto& p : small)
    for (double& v : p) v *= 1e2;
  EXPECT_LT(hausdorff_distance(small, unit), 1e-9);
  for (const auto& p : unit) EXPECT_NEAR(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]), 1.0, 1e-14);
}

TEST(Descriptor, NodeExampleDescribesZW) {
  const auto d = Descriptor::parse(json::parse(R"({"kind":"node","a":0,"b":0,"c":0})"));
  const Z2Form f = d.form();
  const auto x = pt({0.5, 0.5}, {-0.2, 1.0});
  EXPECT_NEAR(std::abs(f.principal_state(x).h_value - Cx{0.5, 0.5} * Cx{-0.2, 1.0}), 0.0, 1e-15);
  EXPECT_EQ(d.to_json()["k"], 1);
}

TEST(Descriptor, RoundTripIsFixedPoint) {
  for (const char* text :
       {R"({"kind":"node","a":[1,2],"b":0,"c":0})", R"({"kind":"lines","lines":[[1,0],[0,1],[1,1]]})",
        R"({"kind":"ramified"})", R"({"kind":"bivariate","coeffs":[[0,1],[1]]})", R"({"kind":"planar","p":[-0.5,1]})",
        R"({"kind":"quadratic","q":[-1,0,1]})", R"({"kind":"r3"})", R"({"kind":"hopf_pullback"})",
        R"({"kind":"seifert","p":2,"q":3})", R"({"kind":"sun","degrees":[1,2],"cutoff":"cubic"})"}) {
    const json canonical = Descriptor::parse(json::parse(text)).to_json();
    EXPECT_EQ(Descriptor::parse(canonical).to_json().dump(), canonical.dump()) << text;
  }
}

TEST(Descriptor, SchemaErrorsNameTheField) {
  auto message = [](const char* text) {
    try {
      Descriptor::parse(json::parse(text));
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::SchemaError);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(R"({"kind":"node","a":0,"b":0})").find("/c"), std::string::npos);
  EXPECT_NE(message(R"({"kind":"node","a":0,"b":0,"c":0,"d":1})").find("/d"), std::string::npos);
  EXPECT_NE(message(R"({"kind":"teapot"})").find("/kind"), std::string::npos);
  EXPECT_NE(message(R"({"kind":"planar","p":["x"]})").find("/p/0"), std::string::npos);
  EXPECT_NE(message(R"({"kind":"seifert","p":2,"q":4})").find("SchemaError"), std::string::npos);
  EXPECT_NE(message(R"({"kind":"sun","grid":511})").find("/grid"), std::string::npos);
}
