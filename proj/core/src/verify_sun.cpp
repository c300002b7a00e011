#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "z2h/error.hpp"
#include "z2h/fd.hpp"
#include "z2h/sun.hpp"
#include "z2h/verify.hpp"

namespace z2h {
namespace {

using json = nlohmann::json;

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

json coefficients_json(const LeadingCoefficients& a) { return {{"A_plus", a.A_plus}, {"A_minus", a.A_minus}}; }

std::function<double(Cx)> sampler(const GridField& u) {
  return [&u](Cx z) { return u.interpolate(z); };
}

GridField combine(const std::vector<GridField>& fields, const std::vector<double>& c) {
  GridField out = fields[0] * c[0];
  for (std::size_t i = 1; i < fields.size(); ++i) out = out + fields[i] * c[i];
  return out;
}

double relative_change(const LeadingCoefficients& a, const LeadingCoefficients& b) {
  return std::hypot(a.A_plus - b.A_plus, a.A_minus - b.A_minus) / std::max(a.norm(), 1e-300);
}

// Even grid size keeping the step fixed when the truncation radius changes.
int grid_for_truncation(int n, double truncation, double new_truncation) {
  const double scaled = n * std::sqrt((new_truncation + 1.0) / (truncation + 1.0));
  return 2 * static_cast<int>(std::lround(scaled / 2.0));
}

// Degree used for the stability checks; A1 of the highest degrees needs finer
// grids than the default to settle.
int probe_degree(const std::vector<int>& degrees) {
  return std::find(degrees.begin(), degrees.end(), 2) != degrees.end() ? 2 : degrees.front();
}

struct DegreeSolves {
  std::vector<GridField> fields;
  std::vector<LeadingCoefficients> a1;
};

DegreeSolves solve_degrees(const SunPipeline& pipe, const std::vector<int>& degrees, std::span<const double> rings) {
  DegreeSolves out;
  for (int k : degrees) {
    out.fields.push_back(pipe.solve(ZonalPolynomial::single(k)));
    out.a1.push_back(extract_A1(sampler(out.fields.back()), rings));
  }
  return out;
}

struct NullResult {
  std::vector<double> c;
  LeadingCoefficients residual;
  double reduction = 0.0;
  GridField field;
};

NullResult null_on(const DegreeSolves& solves, std::span<const double> rings) {
  NullResult r;
  r.c = null_combination(solves.a1);
  r.field = combine(solves.fields, r.c);
  r.residual = extract_A1(sampler(r.field), rings);
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& a : solves.a1) smallest = std::min(smallest, a.norm());
  r.reduction = smallest / std::max(r.residual.norm(), 1e-300);
  return r;
}

}  // namespace

std::vector<Check> sun_checks(const SunSpec& spec, const VerifyOptions& opt) {
  const Tolerances& tol = opt.tol;
  SunParams params = spec.params;
  if (opt.grid > 0) params.grid = opt.grid;
  if (params.grid % 2 != 0 || params.grid < 16)
    throw Error(ErrorCode::SchemaError, "/grid: sun grids must be even and at least 16");
  const int g = params.grid;
  const std::vector<int>& degrees = spec.degrees;
  std::vector<Check> out;

  out.push_back(guarded("mms_order", [&] {
    const auto study = manufactured_convergence({g / 4, g / 2, g}, params.truncation);
    Check c;
    c.points = study.grids.size();
    c.stats = {{"grids", study.grids}, {"max_errors", study.max_errors}, {"orders", study.orders}};
    c.tolerances = {{"mms_order_min", tol.get("mms_order_min")}};
    c.pass = !study.orders.empty() &&
             *std::min_element(study.orders.begin(), study.orders.end()) >= tol.get("mms_order_min");
    return c;
  }));

  const SunPipeline pipe(params);
  const auto rings = default_rings(*pipe.grid());
  DegreeSolves base;
  try {
    base = solve_degrees(pipe, degrees, rings);
  } catch (const Error& e) {
    for (const char* name : {"A1_extraction", "A1_linearity", "A1_resolution", "A1_truncation", "null_reduction",
                             "null_decay", "friedrichs", "cutoff_independence", "axisymmetry"}) {
      Check c;
      c.name = name;
      c.stats = {{"error", e.what()}};
      out.push_back(c);
    }
    return out;
  }

  out.push_back(guarded("A1_extraction", [&] {
    json per = json::array();
    bool pass = true;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      const auto& a = base.a1[i];
      // the reflection eta -> -eta fixes even degrees and flips odd ones
      const double zero = degrees[i] % 2 == 0 ? a.A_minus : a.A_plus;
      const bool ok = std::isfinite(a.norm()) && a.norm() > 0.0 && std::abs(zero) <= tol.get("parity_rel") * a.norm();
      pass = pass && ok;
      per.push_back({{"degree", degrees[i]}, {"A1", coefficients_json(a)}, {"pass", ok}});
    }
    Check c;
    c.points = rings.size();
    c.stats = {{"grid", g}, {"rings", {rings.front(), rings.back(), rings.size()}}, {"degrees", per}};
    c.tolerances = {{"parity_rel", tol.get("parity_rel")}};
    c.pass = pass;
    return c;
  }));

  out.push_back(guarded("A1_linearity", [&] {
    if (degrees.size() < 2) throw Error(ErrorCode::InvalidArgument, "linearity needs two degrees");
    const double a = 0.7, b = -1.3;
    const auto mix = ZonalPolynomial::single(degrees[0], a).plus(ZonalPolynomial::single(degrees[1], b));
    const auto direct = extract_A1(sampler(pipe.solve(mix)), rings);
    const LeadingCoefficients expected{a * base.a1[0].A_plus + b * base.a1[1].A_plus,
                                       a * base.a1[0].A_minus + b * base.a1[1].A_minus};
    const double err = relative_change(expected, direct);
    Check c;
    c.points = rings.size();
    c.stats = {{"combination", {{{"degree", degrees[0]}, {"coefficient", a}}, {{"degree", degrees[1]}, {"coefficient", b}}}},
               {"direct", coefficients_json(direct)},
               {"superposed", coefficients_json(expected)},
               {"relative_error", err}};
    c.tolerances = {{"linearity_rel", tol.get("linearity_rel")}};
    c.pass = err <= tol.get("linearity_rel");
    return c;
  }));

  const int probe = probe_degree(degrees);
  const std::size_t probe_index = static_cast<std::size_t>(std::find(degrees.begin(), degrees.end(), probe) - degrees.begin());

  SunParams fine_params = params;
  fine_params.grid = 2 * g;
  std::optional<SunPipeline> fine_pipe;
  std::optional<DegreeSolves> fine;
  auto ensure_fine = [&]() -> const DegreeSolves& {
    if (!fine) {
      fine_pipe.emplace(fine_params);
      fine = solve_degrees(*fine_pipe, degrees, rings);
    }
    return *fine;
  };

  out.push_back(guarded("A1_resolution", [&] {
    const auto& f = ensure_fine();
    const double err = relative_change(f.a1[probe_index], base.a1[probe_index]);
    json per = json::array();
    for (std::size_t i = 0; i < degrees.size(); ++i)
      per.push_back({{"degree", degrees[i]}, {"relative_change", relative_change(f.a1[i], base.a1[i])}});
    Check c;
    c.points = rings.size();
    c.stats = {{"grids", {g, 2 * g}},
               {"degree", probe},
               {"coarse", coefficients_json(base.a1[probe_index])},
               {"fine", coefficients_json(f.a1[probe_index])},
               {"relative_change", err},
               {"all_degrees", per}};
    c.tolerances = {{"resolution_rel", tol.get("resolution_rel")}};
    c.pass = err <= tol.get("resolution_rel");
    return c;
  }));

  out.push_back(guarded("A1_truncation", [&] {
    SunParams wide = params;
    wide.truncation = 2.0 * params.truncation;
    wide.grid = grid_for_truncation(g, params.truncation, wide.truncation);
    const SunPipeline wide_pipe(wide);
    const auto a = extract_A1(sampler(wide_pipe.solve(ZonalPolynomial::single(probe))), rings);
    const double err = relative_change(a, base.a1[probe_index]);
    Check c;
    c.points = rings.size();
    c.stats = {{"truncations", {params.truncation, wide.truncation}},
               {"grids", {g, wide.grid}},
               {"degree", probe},
               {"original", coefficients_json(base.a1[probe_index])},
               {"doubled", coefficients_json(a)},
               {"relative_change", err}};
    c.tolerances = {{"truncation_rel", tol.get("truncation_rel")}};
    c.pass = err <= tol.get("truncation_rel");
    return c;
  }));

  std::optional<NullResult> null_base;
  out.push_back(guarded("null_reduction", [&] {
    null_base = null_on(base, rings);
    const auto& f = ensure_fine();
    const NullResult null_fine = null_on(f, rings);
    // Coefficients from the coarse grid applied to the fine solves. On one grid
    // the reduction is exact by linearity; the transfer measures discretization.
    const auto transferred = extract_A1(sampler(combine(f.fields, null_base->c)), rings);
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& a : f.a1) smallest = std::min(smallest, a.norm());
    const double transferred_reduction = smallest / std::max(transferred.norm(), 1e-300);
    Check c;
    c.points = rings.size();
    c.stats = {{"coefficients", null_base->c},
               {"residual", coefficients_json(null_base->residual)},
               {"reduction", null_base->reduction},
               {"fine_grid", {{"coefficients", null_fine.c}, {"reduction", null_fine.reduction}}},
               {"coarse_coefficients_on_fine_grid",
                {{"residual", coefficients_json(transferred)}, {"reduction", transferred_reduction}}}};
    c.tolerances = {{"null_reduction", tol.get("null_reduction")}};
    c.pass = null_base->reduction >= tol.get("null_reduction") && null_fine.reduction >= tol.get("null_reduction") &&
             transferred_reduction >= tol.get("null_reduction");
    return c;
  }));

  out.push_back(guarded("null_decay", [&] {
    if (!null_base) null_base = null_on(base, rings);
    const double h = pipe.grid()->step();
    const auto radii = logspace(5.0 * h * h, 0.05, 12);
    std::vector<double> values;
    for (double r : radii) values.push_back(ring_rms(sampler(null_base->field), r));
    const LineFit fit = loglog_fit(radii, values);
    Check c;
    c.points = radii.size();
    c.stats = {{"radii", {radii.front(), radii.back()}}, {"ring_rms", values}, {"slope", fit.slope},
               {"fit_rms_residual", fit.rms_residual}};
    c.tolerances = {{"decay_slope_min", tol.get("decay_slope_min")}};
    c.pass = fit.slope >= tol.get("decay_slope_min");
    return c;
  }));

  out.push_back(guarded("friedrichs", [&] {
    const std::size_t zero = static_cast<std::size_t>(std::find(degrees.begin(), degrees.end(), 0) - degrees.begin());
    const GridField& u = zero < degrees.size() ? base.fields[zero] : base.fields.front();
    const auto proj = ring_projections(sampler(u), rings);
    std::vector<double> scaled;
    for (std::size_t i = 0; i < proj.r.size(); ++i)
      scaled.push_back(std::hypot(proj.cos_part[i], proj.sin_part[i]) / std::sqrt(proj.r[i]));
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    const double ratio = *hi / *lo;
    Check c;
    c.points = rings.size();
    c.stats = {{"degree", zero < degrees.size() ? 0 : degrees.front()}, {"projection_over_sqrt_r", scaled}, {"ratio", ratio}};
    c.tolerances = {{"friedrichs_ratio", tol.get("friedrichs_ratio")}};
    c.pass = ratio <= tol.get("friedrichs_ratio");
    return c;
  }));

  out.push_back(guarded("cutoff_independence", [&] {
    SunParams cubic = params;
    cubic.profile = params.profile == Cutoff::Profile::Quintic ? Cutoff::Profile::Cubic : Cutoff::Profile::Quintic;
    const SunPipeline other(cubic);
    const auto solves = solve_degrees(other, degrees, rings);
    const NullResult r = null_on(solves, rings);
    const double h = pipe.grid()->step();
    const auto radii = logspace(5.0 * h * h, 0.05, 12);
    std::vector<double> values;
    for (double rr : radii) values.push_back(ring_rms(sampler(r.field), rr));
    const double slope = loglog_fit(radii, values).slope;
    Check c;
    c.points = rings.size();
    c.stats = {{"profile", cubic.profile == Cutoff::Profile::Cubic ? "cubic" : "quintic"},
               {"coefficients", r.c},
               {"reduction", r.reduction},
               {"decay_slope", slope}};
    c.tolerances = {{"null_reduction", tol.get("null_reduction")}, {"decay_slope_min", tol.get("decay_slope_min")}};
    c.pass = r.reduction >= tol.get("null_reduction") && slope >= tol.get("decay_slope_min");
    return c;
  }));

  out.push_back(guarded("axisymmetry", [&] {
    const GridField& u = base.fields.back();
    double worst = 0.0;
    std::size_t count = 0;
    for (double s : {0.3, 0.8, 1.4, 2.5})
      for (double x3 : {-0.7, 0.2, 1.1})
        for (int sheet : {1, -1}) {
          const double ref = eval_section(u, std::vector<double>{s, 0.0, x3}, sheet);
          for (double phi : {0.4, 1.9, 3.3, 5.1}) {
            const double v = eval_section(u, std::vector<double>{s * std::cos(phi), s * std::sin(phi), x3}, sheet);
            worst = std::max(worst, std::abs(v - ref));
            ++count;
          }
        }
    Check c;
    c.points = count;
    c.stats = {{"degree", degrees.back()}, {"max_difference", worst}};
    c.tolerances = {{"axisymmetry", tol.get("axisymmetry")}};
    c.pass = worst <= tol.get("axisymmetry");
    return c;
  }));
  return out;
}

}  // namespace z2h
