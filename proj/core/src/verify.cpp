#include "z2h/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "z2h/error.hpp"
#include "z2h/fd.hpp"
#include "z2h/fiber.hpp"
#include "z2h/laplace_beltrami.hpp"
#include "z2h/linking.hpp"
#include "z2h/sigma.hpp"

namespace z2h {
namespace {

using json = nlohmann::json;
using Point = std::vector<double>;

constexpr double kCoarseStep = 1e-2;
constexpr double kFineStep = 5e-3;
constexpr double kGradientStep = 1e-3;
constexpr double kSigmaMargin = 0.1;
// distance_to_sigma overestimates by at most a few 1e-3 for sliced kinds
constexpr double kEstimatedMarginPad = 0.03;

template <class F>
Check guarded(const std::string& name, F&& body) {
  try {
    Check c = body();
    c.name = name;
    return c;
  } catch (const Error& e) {
    Check c;
    c.name = name;
    c.stats = {{"error", e.what()}};
    return c;
  }
}

json tolerance_json(const Tolerances& tol, std::initializer_list<const char*> names) {
  json out = json::object();
  for (const char* n : names) out[n] = tol.get(n);
  return out;
}

json summary(std::vector<double> v) {
  if (v.empty()) return json::object();
  std::sort(v.begin(), v.end());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  return {{"min", v.front()}, {"max", v.back()}, {"median", v[v.size() / 2]}, {"mean", mean}};
}

double rms(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return v.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(v.size()));
}

std::vector<Point> sample_off_sigma(const std::function<double(const Point&)>& distance, std::size_t dim, double half,
                                    std::size_t count, double margin, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-half, half);
  std::vector<Point> out;
  for (std::size_t attempt = 0; attempt < 200 * count && out.size() < count; ++attempt) {
    Point x(dim);
    for (double& c : x) c = u(rng);
    if (distance(x) > margin) out.push_back(std::move(x));
  }
  if (out.empty()) throw Error(ErrorCode::EmptyIntersection, "no sample point far enough from the branching set");
  return out;
}

std::vector<Cx> distinct_roots(const std::vector<Cx>& coeffs, std::vector<int>* multiplicity = nullptr) {
  std::vector<Cx> centres;
  std::vector<int> mult;
  for (Cx r : poly_roots(coeffs)) {
    bool merged = false;
    for (std::size_t i = 0; i < centres.size(); ++i)
      if (std::abs(r - centres[i]) < 1e-4) {
        ++mult[i];
        merged = true;
        break;
      }
    if (!merged) {
      centres.push_back(r);
      mult.push_back(1);
    }
  }
  if (multiplicity) *multiplicity = mult;
  return centres;
}

const std::vector<Cx>* univariate_coeffs(const Z2Form& form) {
  if (const auto* p = std::get_if<Z2Form::PlanarSqrt>(&form.construction()))
    return &std::get<UnivariatePolynomial>(p->p.params()).coeffs;
  if (const auto* q = std::get_if<Z2Form::QuadraticDifferentialSqrt>(&form.construction()))
    return &std::get<UnivariatePolynomial>(q->q.params()).coeffs;
  return nullptr;
}

// Distance to the branching set and the sampling box for pointwise checks.
struct Domain {
  std::size_t dim;
  double half;
  double margin;
  std::function<double(const Point&)> distance;
};

Domain domain_of(const Z2Form& form) {
  return std::visit(
      [&](const auto& c) -> Domain {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Z2Form::ReHPower>) {
          const bool exact = std::holds_alternative<ProductOfLines>(c.h.params());
          const DefiningFunction h = c.h;
          return {4, 1.5, kSigmaMargin + (exact ? 0.0 : kEstimatedMarginPad),
                  [h](const Point& x) { return distance_to_sigma(h, x); }};
        } else if constexpr (std::is_same_v<T, Z2Form::AxialProduct>) {
          return {3, 1.5, kSigmaMargin, [](const Point& x) { return std::hypot(x[0], x[1]); }};
        } else if constexpr (std::is_same_v<T, Z2Form::Pullback>) {
          throw Error(ErrorCode::InvalidArgument, "pullbacks are checked on S^3 charts");
        } else {
          const auto roots = distinct_roots(*univariate_coeffs(form));
          double extent = 1.0;
          for (Cx r : roots) extent = std::max(extent, std::abs(r) + 1.0);
          return {2, extent, kSigmaMargin, [roots](const Point& x) {
                    double d = std::numeric_limits<double>::infinity();
                    for (Cx r : roots) d = std::min(d, std::abs(Cx{x[0], x[1]} - r));
                    return d;
                  }};
        }
      },
      form.construction());
}

// ---------------------------------------------------------------- harmonicity

Check richardson_check(const std::vector<std::pair<Point, ScalarField>>& fields, std::size_t points,
                       const Tolerances& tol) {
  const double lo = tol.get("harmonic_ratio_lo"), hi = tol.get("harmonic_ratio_hi");
  std::vector<double> ratios, coarse, fine;
  std::size_t in_range = 0;
  for (const auto& [x, f] : fields) {
    const double a = fd_laplacian(f, x, kCoarseStep), b = fd_laplacian(f, x, kFineStep);
    coarse.push_back(a);
    fine.push_back(b);
    const double r = std::abs(a) / std::abs(b);
    ratios.push_back(r);
    if (r >= lo && r <= hi) ++in_range;
  }
  std::vector<double> abs_fine(fine.size());
  std::transform(fine.begin(), fine.end(), abs_fine.begin(), [](double v) { return std::abs(v); });
  Check c;
  c.points = points;
  c.stats = {{"fields", fields.size()},
             {"ratio", summary(ratios)},
             {"ratio_rms", rms(coarse) / rms(fine)},
             {"in_range", in_range},
             {"residual_fine", summary(abs_fine)},
             {"steps", {kCoarseStep, kFineStep}}};
  c.tolerances = tolerance_json(tol, {"harmonic_ratio_lo", "harmonic_ratio_hi"});
  c.pass = !fields.empty() && in_range == fields.size();
  return c;
}

Check gradient_check(const Z2Form& form, const std::vector<Point>& pts, const Tolerances& tol) {
  std::vector<double> errs;
  for (const auto& x : pts) {
    const BranchState s = form.principal_state(x);
    const Covector om = form.eval_omega(s);
    const auto g = fd_gradient(form.local_potential(s), x, kGradientStep);
    double diff = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) diff += (g[i] - om[i]) * (g[i] - om[i]);
    errs.push_back(std::sqrt(diff) / om.norm());
  }
  Check c;
  c.points = pts.size();
  c.stats = {{"relative_error", summary(errs)}, {"step", kGradientStep}};
  c.tolerances = tolerance_json(tol, {"gradient_rel"});
  c.pass = !errs.empty() && *std::max_element(errs.begin(), errs.end()) <= tol.get("gradient_rel");
  return c;
}

using PlaneHarmonic = std::pair<const char*, std::function<double(Cx)>>;

std::vector<PlaneHarmonic> test_harmonics() {
  return {{"Re xi", [](Cx v) { return v.real(); }},
          {"Im xi", [](Cx v) { return v.imag(); }},
          {"Re xi^2", [](Cx v) { return (v * v).real(); }},
          {"Im xi^3", [](Cx v) { return (v * v * v).imag(); }},
          {"log|xi|", [](Cx v) { return std::log(std::abs(v)); }}};
}

std::vector<Point> s3_chart_points(std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> eta(0.3, 1.27), angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Point> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double e = eta(rng), a = angle(rng), b = angle(rng);
    out.push_back({e, a, b});
  }
  return out;
}

Cx hopf_xi(std::span<const double> x) { return w_of(x) / z_of(x); }

Check morphism_check(const std::vector<Point>& chart_pts, const Tolerances& tol) {
  const MetricChart s3 = MetricChart::round_s3();
  json per = json::array();
  bool pass = true;
  for (const auto& [name, g] : test_harmonics()) {
    const ScalarField u = [g = g](std::span<const double> x) { return g(hopf_xi(x)); };
    std::vector<double> coarse, fine, orders;
    for (const auto& p : chart_pts) {
      const double a = laplace_beltrami(s3, u, p, kCoarseStep), b = laplace_beltrami(s3, u, p, kFineStep);
      coarse.push_back(a);
      fine.push_back(b);
      orders.push_back(std::log2(std::abs(a) / std::abs(b)));
    }
    const double order = std::log2(rms(coarse) / rms(fine));
    const bool ok = order >= tol.get("lb_order_min");
    pass = pass && ok;
    per.push_back({{"harmonic", name}, {"order", order}, {"pointwise_order", summary(orders)},
                   {"residual_fine_rms", rms(fine)}, {"pass", ok}});
  }
  Check c;
  c.points = chart_pts.size();
  c.stats = {{"harmonics", per}, {"steps", {kCoarseStep, kFineStep}}};
  c.tolerances = tolerance_json(tol, {"lb_order_min"});
  c.pass = pass;
  return c;
}

Check cross_oracle_check(const std::vector<Point>& chart_pts, const Tolerances& tol) {
  const MetricChart s3 = MetricChart::round_s3();
  auto extrapolate = [](double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; };
  const std::vector<std::pair<const char*, ScalarField>> fields{
      {"x0 x2 + x1^2", [](std::span<const double> x) { return x[0] * x[2] + x[1] * x[1]; }},
      {"exp(x0) cos(x3)", [](std::span<const double> x) { return std::exp(x[0]) * std::cos(x[3]); }},
      {"Re xi |z|^2", [](std::span<const double> x) { return hopf_xi(x).real() * std::norm(z_of(x)); }},
  };
  std::vector<double> chart_vs_ext, chart_vs_exact;
  for (const auto& p : chart_pts) {
    const Point x = s3.embed(p);
    for (const auto& [name, u] : fields) {
      const double a = extrapolate(laplace_beltrami(s3, u, p, kCoarseStep), laplace_beltrami(s3, u, p, kFineStep));
      const double b = extrapolate(homogeneous_extension_laplacian(u, x, kCoarseStep),
                                   homogeneous_extension_laplacian(u, x, kFineStep));
      chart_vs_ext.push_back(std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12}));
    }
    // x0 x2 is a degree-2 harmonic polynomial: Delta_{S^3} = -l(l+2) = -8 times it
    const ScalarField q = [](std::span<const double> y) { return y[0] * y[2]; };
    const double exact = -8.0 * q(x);
    const double a = extrapolate(laplace_beltrami(s3, q, p, kCoarseStep), laplace_beltrami(s3, q, p, kFineStep));
    chart_vs_exact.push_back(std::abs(a - exact) / std::max(std::abs(exact), 1e-12));
  }
  const double worst = std::max(*std::max_element(chart_vs_ext.begin(), chart_vs_ext.end()),
                                *std::max_element(chart_vs_exact.begin(), chart_vs_exact.end()));
  Check c;
  c.points = chart_pts.size();
  c.stats = {{"chart_vs_extension", summary(chart_vs_ext)}, {"chart_vs_spherical_harmonic", summary(chart_vs_exact)}};
  c.tolerances = tolerance_json(tol, {"cross_oracle_rel"});
  c.pass = worst <= tol.get("cross_oracle_rel");
  return c;
}

std::vector<Check> harmonicity_suite(const Descriptor& d, const VerifyOptions& opt, std::mt19937_64& rng) {
  const Z2Form form = d.form();
  std::vector<Check> out;
  if (std::holds_alternative<Z2Form::Pullback>(form.construction())) {
    const auto pts = s3_chart_points(20, rng);
    out.push_back(guarded("harmonic_morphism", [&] { return morphism_check(pts, opt.tol); }));
    out.push_back(guarded("lb_cross_oracle", [&] { return cross_oracle_check(pts, opt.tol); }));
    if (form.has_potential()) {
      out.push_back(guarded("pullback_harmonicity", [&] {
        const MetricChart s3 = MetricChart::round_s3();
        std::vector<double> coarse, fine;
        for (const auto& p : pts) {
          const Point x = s3.embed(p);
          const ScalarField f = form.local_potential(form.principal_state(x));
          coarse.push_back(laplace_beltrami(s3, f, p, kCoarseStep));
          fine.push_back(laplace_beltrami(s3, f, p, kFineStep));
        }
        Check c;
        c.points = pts.size();
        const double order = std::log2(rms(coarse) / rms(fine));
        c.stats = {{"order", order}, {"residual_fine_rms", rms(fine)}};
        c.tolerances = tolerance_json(opt.tol, {"lb_order_min"});
        c.pass = order >= opt.tol.get("lb_order_min");
        return c;
      }));
    }
    return out;
  }

  const Domain dom = domain_of(form);
  const auto pts = sample_off_sigma(dom.distance, dom.dim, dom.half, opt.points, dom.margin, rng);
  out.push_back(guarded("harmonicity", [&] {
    std::vector<std::pair<Point, ScalarField>> fields;
    for (const auto& x : pts) {
      const BranchState s = form.principal_state(x);
      if (form.has_potential()) fields.emplace_back(x, form.local_potential(s));
      if (!std::holds_alternative<Z2Form::ReHPower>(form.construction()) &&
          !std::holds_alternative<Z2Form::AxialProduct>(form.construction())) {
        const auto omega = form.local_omega(s);
        for (std::size_t i = 0; i < x.size(); ++i)
          fields.emplace_back(x, [omega, i](std::span<const double> y) { return omega(y)[i]; });
      }
    }
    Check c = richardson_check(fields, pts.size(), opt.tol);
    c.stats["margin"] = dom.margin;
    return c;
  }));
  if (form.has_potential()) out.push_back(guarded("gradient_consistency", [&] { return gradient_check(form, pts, opt.tol); }));
  return out;
}

// ------------------------------------------------------------------ monodromy

Polyline circle_loop(const Point& centre, std::size_t re, std::size_t im, double radius, std::size_t n) {
  std::vector<double> coords;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    Point p = centre;
    p[re] += radius * std::cos(t);
    p[im] += radius * std::sin(t);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return Polyline(centre.size(), std::move(coords), true);
}

struct LoopCase {
  std::string label;
  Polyline loop;
  int expected_winding;  // multiplicity enclosed, or -1 when unknown
};

Check monodromy_check(const ComplexField& field, const std::vector<LoopCase>& loops) {
  json cases = json::array();
  std::size_t agree = 0, stable = 0, expected_ok = 0, minus = 0;
  for (const auto& lc : loops) {
    const int sign = monodromy(field, lc.loop);
    const int refined = monodromy(field, lc.loop.refined(2));
    const int w = winding_number(field, lc.loop);
    const int oracle = (w % 2 == 0) ? 1 : -1;
    agree += sign == oracle;
    stable += sign == refined;
    expected_ok += lc.expected_winding < 0 || lc.expected_winding == std::abs(w);
    minus += sign == -1;
    cases.push_back({{"loop", lc.label}, {"sign", sign}, {"refined_sign", refined}, {"winding", w}});
  }
  Check c;
  c.points = loops.size();
  c.stats = {{"loops", cases},
             {"oracle_agreement", loops.empty() ? 0.0 : static_cast<double>(agree) / static_cast<double>(loops.size())},
             {"refinement_stable", stable},
             {"multiplicity_matches", expected_ok},
             {"minus_one", minus}};
  c.pass = !loops.empty() && agree == loops.size() && stable == loops.size() && expected_ok == loops.size();
  return c;
}

std::string fmt_point(std::span<const double> x) {
  json j = json::array();
  for (double v : x) j.push_back(std::round(v * 1e6) / 1e6 + 0.0);
  return j.dump();
}

std::vector<LoopCase> sliced_meridians(const DefiningFunction& h, std::size_t slices, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  std::vector<LoopCase> out;
  for (std::size_t s = 0; s < slices; ++s) {
    const bool fix_z = s % 2 == 0;
    const Cx fixed{u(rng), u(rng)};
    const auto coeffs = fix_z ? h.coefficients_in_w(fixed) : h.coefficients_in_z(fixed);
    std::size_t top = coeffs.size();
    while (top > 0 && coeffs[top - 1] == Cx{}) --top;
    if (top < 2 || std::abs(coeffs[top - 1]) < 1e-3) continue;
    std::vector<int> mult;
    const auto roots = distinct_roots(coeffs, &mult);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      double gap = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (j != i) gap = std::min(gap, std::abs(roots[j] - roots[i]));
      const double radius = std::min(0.05, 0.3 * gap);
      const Point centre = fix_z ? Point{fixed.real(), fixed.imag(), roots[i].real(), roots[i].imag()}
                                 : Point{roots[i].real(), roots[i].imag(), fixed.real(), fixed.imag()};
      out.push_back({std::string(fix_z ? "w-meridian at " : "z-meridian at ") + fmt_point(centre),
                     circle_loop(centre, fix_z ? 2 : 0, fix_z ? 3 : 1, radius, 64), mult[i]});
    }
  }
  return out;
}

std::vector<Check> monodromy_suite(const Descriptor& d, const VerifyOptions& opt, std::mt19937_64& rng) {
  const Z2Form form = d.form();
  const ComplexField field = form.branch_field();
  std::vector<LoopCase> loops;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Z2Form::ReHPower>) {
          loops = sliced_meridians(c.h, 24, rng);
        } else if constexpr (std::is_same_v<T, Z2Form::AxialProduct>) {
          for (double z : {-1.0, 0.5, 1.0}) loops.push_back({"meridian of the z-axis at z = " + fmt_point(Point{z}), circle_loop({0.0, 0.0, z}, 0, 1, 0.1, 64), 1});
          loops.push_back({"loop away from the axis", circle_loop({0.5, 0.5, 0.0}, 0, 1, 0.1, 64), 0});
        } else if constexpr (std::is_same_v<T, Z2Form::Pullback>) {
          const auto& coeffs = std::get<UnivariatePolynomial>(
                                   std::get<Z2Form::PlanarSqrt>(c.base->construction()).p.params())
                                   .coeffs;
          std::vector<int> mult;
          const auto roots = distinct_roots(coeffs, &mult);
          const std::size_t n = opt.resolution;
          for (std::size_t i = 0; i < roots.size(); ++i) {
            // meridian of the fiber over the root: xi = root + eps e^{it}
            std::vector<double> coords;
            for (std::size_t j = 0; j < n; ++j) {
              const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
              const Cx xi = roots[i] + std::polar(0.05, t);
              const double norm = std::sqrt(1.0 + std::norm(xi));
              coords.insert(coords.end(), {1.0 / norm, 0.0, xi.real() / norm, xi.imag() / norm});
            }
            loops.push_back({"meridian of the fiber over xi = " + fmt_point(Point{roots[i].real(), roots[i].imag()}),
                             Polyline(4, std::move(coords), true), mult[i]});
          }
          // A regular fiber links the fibers over the roots but maps to one point.
          const Cx far = roots.empty() ? Cx{1.0, 0.0} : roots.front() + Cx{0.7, 0.4};
          loops.push_back({"Hopf fiber over xi = " + fmt_point(Point{far.real(), far.imag()}), fiber(1, 1, far).sample(n), 0});
        } else {
          std::vector<int> mult;
          const auto roots = distinct_roots(*univariate_coeffs(form), &mult);
          for (std::size_t i = 0; i < roots.size(); ++i) {
            double gap = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < roots.size(); ++j)
              if (j != i) gap = std::min(gap, std::abs(roots[j] - roots[i]));
            loops.push_back({"loop around z = " + fmt_point(Point{roots[i].real(), roots[i].imag()}),
                             circle_loop({roots[i].real(), roots[i].imag()}, 0, 1, std::min(0.1, 0.3 * gap), 64), mult[i]});
          }
        }
      },
      form.construction());
  return {guarded("monodromy", [&] { return monodromy_check(field, loops); })};
}

// ------------------------------------------------------------ vanishing order

struct RaySlope {
  std::string label;
  double slope;
  double expected;
};

double ray_slope(const Z2Form& form, const std::function<Point(double)>& ray) {
  const auto radii = logspace(1e-4, 1e-2, 20);
  std::vector<double> mags;
  for (double r : radii) mags.push_back(form.eval_omega(form.principal_state(ray(r))).norm());
  return loglog_fit(radii, mags).slope;
}

Check slope_check(const std::vector<RaySlope>& rays, const Tolerances& tol) {
  json list = json::array();
  bool pass = !rays.empty();
  for (const auto& r : rays) {
    const bool ok = std::abs(r.slope - r.expected) <= tol.get("slope_tol");
    pass = pass && ok;
    list.push_back({{"ray", r.label}, {"slope", r.slope}, {"expected", r.expected}, {"pass", ok}});
  }
  Check c;
  c.points = rays.size();
  c.stats = {{"rays", list}, {"window", {1e-4, 1e-2}}, {"samples", 20}};
  c.tolerances = tolerance_json(tol, {"slope_tol"});
  c.pass = pass;
  return c;
}

std::vector<Check> vanishing_suite(const Descriptor& d, const VerifyOptions& opt, std::mt19937_64& rng) {
  const Z2Form form = d.form();
  std::vector<Check> out;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Z2Form::ReHPower>) {
          out.push_back(guarded("vanishing_order", [&] {
            std::vector<RaySlope> rays;
            for (const auto& x : smooth_sigma_points(c.h, Box::cube(4, 1.2), 20, 0.5, rng())) {
              const auto n = complex_normal(c.h, x);
              rays.push_back({fmt_point(x),
                              ray_slope(form, [&](double r) {
                                return Point{x[0] + r * n[0], x[1] + r * n[1], x[2] + r * n[2], x[3] + r * n[3]};
                              }),
                              c.k.k - 0.5});
            }
            return slope_check(rays, opt.tol);
          }));
        } else if constexpr (std::is_same_v<T, Z2Form::AxialProduct>) {
          const double top = c.k.exponent();
          out.push_back(guarded("vanishing_order", [&] {
            const Point dir{0.48, 0.36, 0.8};
            std::vector<RaySlope> rays{{"origin along (0.48, 0.36, 0.8)",
                                        ray_slope(form, [&](double r) { return Point{r * dir[0], r * dir[1], r * dir[2]}; }),
                                        top}};
            for (double z : {1.0, -0.5, 2.0})
              rays.push_back({"(0, 0, " + fmt_point(Point{z}) + ") along x",
                              ray_slope(form, [&](double r) { return Point{r, 0.0, z}; }), top - 1.0});
            return slope_check(rays, opt.tol);
          }));
        } else if constexpr (std::is_same_v<T, Z2Form::Pullback>) {
          out.push_back(guarded("vanishing_order", [&] {
            const auto& coeffs = std::get<UnivariatePolynomial>(
                                     std::get<Z2Form::PlanarSqrt>(c.base->construction()).p.params())
                                     .coeffs;
            std::vector<int> mult;
            const auto roots = distinct_roots(coeffs, &mult);
            std::vector<RaySlope> rays;
            for (std::size_t i = 0; i < roots.size(); ++i)
              for (double alpha : {0.3, 2.1, 4.4})
                rays.push_back({"fiber over xi = " + fmt_point(Point{roots[i].real(), roots[i].imag()}),
                                ray_slope(form,
                                          [&](double r) {
                                            const Cx xi = roots[i] + std::polar(r, alpha);
                                            const double n = std::sqrt(1.0 + std::norm(xi));
                                            return Point{1.0 / n, 0.0, xi.real() / n, xi.imag() / n};
                                          }),
                                0.5 * mult[i]});
            return slope_check(rays, opt.tol);
          }));
        } else {
          out.push_back(guarded("vanishing_order", [&] {
            std::vector<int> mult;
            const auto roots = distinct_roots(*univariate_coeffs(form), &mult);
            std::vector<RaySlope> rays;
            for (std::size_t i = 0; i < roots.size(); ++i)
              for (double alpha : {0.3, 2.1, 4.4})
                rays.push_back({"root " + fmt_point(Point{roots[i].real(), roots[i].imag()}),
                                ray_slope(form,
                                          [&](double r) {
                                            const Cx z = roots[i] + std::polar(r, alpha);
                                            return Point{z.real(), z.imag()};
                                          }),
                                0.5 * mult[i]});
            return slope_check(rays, opt.tol);
          }));
        }
      },
      form.construction());
  return out;
}

// ------------------------------------------------------------------- topology

std::vector<Check> fibration_checks(int p, int q, Cx a, const VerifyOptions& opt) {
  const Tolerances& tol = opt.tol;
  std::vector<Check> out;
  const std::size_t n = opt.resolution;
  const Fiber f1 = fiber(p, q, a), f2 = fiber(p, q, a * std::polar(1.7, 2.1));
  const bool hopf = p == 1 && q == 1;
  const char* lk_tol = hopf ? "linking_hopf" : "linking_seifert";

  out.push_back(guarded(hopf ? "hopf_linking" : "seifert_linking", [&] {
    const double coarse = s3_gauss_linking(f1.sample(n), f2.sample(n));
    const double fine = s3_gauss_linking(f1.sample(2 * n), f2.sample(2 * n));
    const double crossings = s3_crossing_linking(f1.sample(n), f2.sample(n));
    const double expected = p * q;
    const double t = tol.get(lk_tol);
    Check c;
    c.points = 2;
    c.stats = {{"gauss", {{"samples", n}, {"value", coarse}}},
               {"gauss_refined", {{"samples", 2 * n}, {"value", fine}}},
               {"crossing_count", crossings},
               {"expected_abs", expected}};
    c.tolerances = tolerance_json(tol, {lk_tol});
    c.pass = std::abs(std::abs(coarse) - expected) <= t && std::abs(std::abs(fine) - expected) <= t &&
             std::abs(coarse - fine) <= t && std::abs(crossings - std::round(fine)) == 0.0;
    return c;
  }));

  out.push_back(guarded("covering_degree", [&] {
    const Polyline core = singular_fiber(p, q, Core::Z2Zero).sample(n);
    json cases = json::array();
    bool pass = true;
    for (double eps : {0.05, 0.1, 0.15, 0.19})
      for (double phase : {0.0, 1.3}) {
        const Polyline f = fiber(p, q, chart_point_for_tube_radius(p, q, eps, phase)).sample(n);
        const double dist = max_distance_to(f, core);
        const int deg = covering_degree(f, core);
        const bool ok = dist < 0.2 && std::abs(deg) == q;
        pass = pass && ok;
        cases.push_back({{"tube_radius", eps}, {"phase", phase}, {"max_distance", dist}, {"degree", deg}, {"pass", ok}});
      }
    Check c;
    c.points = cases.size();
    c.stats = {{"core", "z2 = 0"}, {"expected", q}, {"cases", cases}};
    c.pass = pass;
    return c;
  }));

  out.push_back(guarded("winding_pair", [&] {
    const auto w1 = f1.winding_pair(n), w2 = f2.winding_pair(n);
    Check c;
    c.points = 2;
    c.stats = {{"found", {{w1.first, w1.second}, {w2.first, w2.second}}}, {"expected", {q, p}}};
    c.pass = w1 == std::pair{q, p} && w2 == std::pair{q, p};
    return c;
  }));

  out.push_back(guarded("fiber_invariance", [&] {
    const SmoothMap pi = SmoothMap::seifert(p, q);
    double worst = 0.0;
    for (const Fiber& f : {f1, f2}) {
      const auto start = f.at(0.0);
      const auto base = pi(start);
      const Polyline line = f.sample(n);
      for (std::size_t i = 0; i < line.size(); ++i) {
        const auto img = pi(line.point(i));
        worst = std::max(worst, std::hypot(img[0] - base[0], img[1] - base[1], img[2] - base[2]));
      }
    }
    Check c;
    c.points = 2 * n;
    c.stats = {{"max_chordal_distance", worst}};
    c.tolerances = tolerance_json(tol, {"fiber_invariance"});
    c.pass = worst < tol.get("fiber_invariance");
    return c;
  }));

  out.push_back(guarded("core_linking", [&] {
    const Polyline f = f1.sample(n);
    const double with_z2 = s3_gauss_linking(f, singular_fiber(p, q, Core::Z2Zero).sample(n));
    const double with_z1 = s3_gauss_linking(f, singular_fiber(p, q, Core::Z1Zero).sample(n));
    Check c;
    c.points = 3;
    c.stats = {{"core_z2_zero", {{"value", with_z2}, {"expected_abs", p}}},
               {"core_z1_zero", {{"value", with_z1}, {"expected_abs", q}}}};
    c.tolerances = tolerance_json(tol, {lk_tol});
    const double t = tol.get(lk_tol);
    c.pass = std::abs(std::abs(with_z2) - p) <= t && std::abs(std::abs(with_z1) - q) <= t;
    return c;
  }));
  return out;
}

std::vector<Check> lines_checks(const ReHPowerSpec& spec, const VerifyOptions& opt, std::mt19937_64& rng) {
  const Tolerances& tol = opt.tol;
  const auto& lines = std::get<ProductOfLines>(spec.h.params()).lines;
  const std::size_t n = opt.resolution;
  std::vector<Check> out;

  out.push_back(guarded("tangent_cone", [&] {
    const auto unit = collect_points(sigma_on_sphere(spec.h, 1.0, n));
    json cases = json::array();
    double worst = 0.0;
    for (double r : {1e-2, 1e-1, 1.0}) {
      auto pts = collect_points(sigma_on_sphere(spec.h, r, n));
      for (auto& p : pts)
        for (double& v : p) v /= r;
      const double d = hausdorff_distance(pts, unit);
      worst = std::max(worst, d);
      cases.push_back({{"radius", r}, {"hausdorff", d}});
    }
    Check c;
    c.points = unit.size();
    c.stats = {{"radii", cases}};
    c.tolerances = tolerance_json(tol, {"hausdorff"});
    c.pass = worst < tol.get("hausdorff");
    return c;
  }));

  out.push_back(guarded("homogeneity", [&] {
    const Z2Form form = Z2Form::re_h_power(spec.h, spec.k);
    const double degree = spec.k.exponent() * static_cast<double>(lines.size());
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> errs;
    std::size_t used = 0;
    for (std::size_t attempt = 0; attempt < 20 * opt.points && used < opt.points / 4; ++attempt) {
      const Point x{u(rng), u(rng), u(rng), u(rng)};
      if (distance_to_sigma(spec.h, x) < kSigmaMargin) continue;
      const double fx = form.eval_f(form.principal_state(x));
      if (std::abs(fx) < 1e-3) continue;
      ++used;
      for (double lambda : {0.1, 0.5, 2.0, 10.0}) {
        const Point y{lambda * x[0], lambda * x[1], lambda * x[2], lambda * x[3]};
        const double fy = form.eval_f(form.principal_state(y));
        errs.push_back(std::abs(std::log(std::abs(fy)) - std::log(std::abs(fx)) - degree * std::log(lambda)));
      }
    }
    Check c;
    c.points = used;
    c.stats = {{"degree", degree}, {"abs_error", summary(errs)}, {"scales", {0.1, 0.5, 2.0, 10.0}}};
    c.tolerances = tolerance_json(tol, {"homogeneity"});
    c.pass = !errs.empty() && *std::max_element(errs.begin(), errs.end()) <= tol.get("homogeneity");
    return c;
  }));

  if (lines.size() >= 2) {
    out.push_back(guarded("sigma_linking", [&] {
      const auto circles = sigma_on_sphere(spec.h, 1.0, n);
      json pairs = json::array();
      bool pass = true;
      for (std::size_t i = 0; i < circles.size(); ++i)
        for (std::size_t j = i + 1; j < circles.size(); ++j) {
          const double lk = s3_gauss_linking(circles[i], circles[j]);
          const bool ok = std::abs(std::abs(lk) - 1.0) <= tol.get("linking_hopf");
          pass = pass && ok;
          pairs.push_back({{"pair", {i, j}}, {"linking", lk}, {"pass", ok}});
        }
      Check c;
      c.points = circles.size();
      c.stats = {{"pairs", pairs}};
      c.tolerances = tolerance_json(tol, {"linking_hopf"});
      c.pass = pass;
      return c;
    }));
  }
  return out;
}

std::vector<Check> topology_suite(const Descriptor& d, const VerifyOptions& opt, std::mt19937_64& rng) {
  if (const auto* s = std::get_if<SeifertSpec>(&d.body())) return fibration_checks(s->p, s->q, s->a, opt);
  if (std::holds_alternative<HopfPullbackSpec>(d.body())) return fibration_checks(1, 1, Cx{1.0, 0.0}, opt);
  if (const auto* r = std::get_if<ReHPowerSpec>(&d.body()); r && std::holds_alternative<ProductOfLines>(r->h.params()))
    return lines_checks(*r, opt, rng);
  throw Error(ErrorCode::SchemaError, "/kind: suite \"topology\" applies to lines, seifert and hopf_pullback");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"harmonicity", "monodromy", "vanishing-order", "topology", "sun"};
  return names;
}

Report verify(const Descriptor& d, const VerifyOptions& opt) {
  if (std::find(suite_names().begin(), suite_names().end(), opt.suite) == suite_names().end())
    throw Error(ErrorCode::SchemaError, "--suite: unknown suite \"" + opt.suite + "\"");
  Report report;
  report.construction = d.to_json();
  report.suite = opt.suite;
  report.seed = opt.seed;
  std::mt19937_64 rng(opt.seed);

  const bool is_sun = std::holds_alternative<SunSpec>(d.body());
  const bool is_form = !is_sun && !std::holds_alternative<SeifertSpec>(d.body());
  if (opt.suite == "sun") {
    if (!is_sun) throw Error(ErrorCode::SchemaError, "/kind: suite \"sun\" needs a sun descriptor");
    report.checks = sun_checks(std::get<SunSpec>(d.body()), opt);
  } else if (opt.suite == "topology") {
    report.checks = topology_suite(d, opt, rng);
  } else {
    if (!is_form) throw Error(ErrorCode::SchemaError, "/kind: suite \"" + opt.suite + "\" needs a form descriptor");
    if (opt.suite == "harmonicity") report.checks = harmonicity_suite(d, opt, rng);
    if (opt.suite == "monodromy") report.checks = monodromy_suite(d, opt, rng);
    if (opt.suite == "vanishing-order") report.checks = vanishing_suite(d, opt, rng);
  }
  return report;
}

}  // namespace z2h
