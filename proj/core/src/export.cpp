#include "z2h/export.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>

#include "z2h/error.hpp"
#include "z2h/fiber.hpp"
#include "z2h/linking.hpp"
#include "z2h/sigma.hpp"
#include "z2h/sun.hpp"

namespace z2h {
namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IOError, "cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IOError, "write failed for " + path.string());
}

Polyline circle_points(std::size_t n, const std::function<std::vector<double>(double)>& at) {
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(at(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n)));
  return Polyline::from_points(pts, true);
}

std::vector<Polyline> sigma_curves(const Descriptor& d, std::size_t n) {
  const auto& body = d.body();
  if (const auto* r = std::get_if<ReHPowerSpec>(&body)) return sample_sigma(r->h, Box::cube(4, 1.5), n);
  if (const auto* p = std::get_if<PlanarSpec>(&body)) {
    std::vector<std::vector<double>> pts;
    for (Cx root : poly_roots(p->p)) pts.push_back({root.real(), root.imag()});
    if (pts.empty()) throw Error(ErrorCode::EmptyIntersection, "polynomial has no roots");
    return {Polyline::from_points(pts, false)};
  }
  if (std::holds_alternative<R3Spec>(body)) {
    std::vector<double> coords;
    for (std::size_t i = 0; i < n; ++i) coords.insert(coords.end(), {0.0, 0.0, -1.5 + 3.0 * static_cast<double>(i) / static_cast<double>(n - 1)});
    return {Polyline(3, std::move(coords), false)};
  }
  if (const auto* hp = std::get_if<HopfPullbackSpec>(&body)) {
    std::vector<Polyline> out;
    for (Cx root : poly_roots(hp->p)) {
      if (std::abs(root) < 1e-12)
        out.push_back(singular_fiber(1, 1, Core::Z2Zero).sample(n));
      else
        out.push_back(fiber(1, 1, root).sample(n));
    }
    return out;
  }
  if (std::holds_alternative<SunSpec>(body))
    return {circle_points(n, [](double t) { return std::vector<double>{std::cos(t), std::sin(t), 0.0}; })};
  throw Error(ErrorCode::SchemaError, "/kind: \"" + d.kind() + "\" has no branching set to export");
}

std::vector<fs::path> export_sigma(const Descriptor& d, const ExportOptions& opt) {
  const auto curves = sigma_curves(d, opt.resolution);
  const fs::path path = opt.dir / "sigma.csv";
  auto out = open_out(path);
  const std::size_t dim = curves.front().dim();
  for (std::size_t i = 0; i < dim; ++i) out << (i ? "," : "") << 'x' << i;
  out << '\n';
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto p = c.point(i);
      for (std::size_t k = 0; k < dim; ++k) out << (k ? "," : "") << p[k];
      out << '\n';
    }
  finish(out, path);
  return {path};
}

std::vector<fs::path> export_fiber(const Descriptor& d, const ExportOptions& opt) {
  Fiber f;
  if (const auto* s = std::get_if<SeifertSpec>(&d.body()))
    f = fiber(s->p, s->q, s->a);
  else if (std::holds_alternative<HopfPullbackSpec>(d.body()))
    f = fiber(1, 1, Cx{1.0, 0.0});
  else
    throw Error(ErrorCode::SchemaError, "/kind: fibers exist for seifert and hopf_pullback only");
  const Polyline line = f.sample(opt.resolution);
  const fs::path csv = opt.dir / "fiber.csv", obj = opt.dir / "fiber.obj";
  {
    auto out = open_out(csv);
    write_csv(out, line);
    finish(out, csv);
  }
  {
    auto out = open_out(obj);
    write_obj(out, stereographic_to_r3(line, choose_projection_pole({&line})));
    finish(out, obj);
  }
  return {csv, obj};
}

std::vector<fs::path> export_field(const Descriptor& d, const ExportOptions& opt) {
  const auto* spec = std::get_if<SunSpec>(&d.body());
  if (!spec) throw Error(ErrorCode::SchemaError, "/kind: fields are exported for sun only");
  SunParams params = spec->params;
  if (opt.grid > 0) params.grid = opt.grid;
  const SunPipeline pipe(params);
  const auto& grid = *pipe.grid();
  std::vector<fs::path> paths;
  for (int k : spec->degrees) {
    const GridField u = pipe.solve(ZonalPolynomial::single(k));
    const std::string stem = "field_k" + std::to_string(k);
    const fs::path csv = opt.dir / (stem + ".csv"), meta = opt.dir / (stem + ".json");
    {
      auto out = open_out(csv);
      out << "xi,eta,u\n";
      for (int j = 0; j < grid.n(); ++j)
        for (int i = 0; i < grid.n(); ++i) {
          const double v = grid.node(i, j) == DoubleCoverGrid::Node::Active ? u.at(i, j) : std::nan("");
          out << grid.coordinate(i) << ',' << grid.coordinate(j) << ',' << v << '\n';
        }
      finish(out, csv);
    }
    {
      const LeadingCoefficients a = extract_A1(u);
      const nlohmann::json j = {{"degree", k},
                                {"n", grid.n()},
                                {"step", grid.step()},
                                {"half_width", grid.half_width()},
                                {"truncation", grid.truncation()},
                                {"R1", params.r1},
                                {"R2", params.r2},
                                {"cutoff", params.profile == Cutoff::Profile::Quintic ? "quintic" : "cubic"},
                                {"layout", "row-major, rows along eta, columns along xi"},
                                {"chart", "s + i x3 = zeta^2 + 1, sheet = sign Re zeta"},
                                {"A1", {{"A_plus", a.A_plus}, {"A_minus", a.A_minus}}},
                                {"csv", csv.filename().string()}};
      auto out = open_out(meta);
      out << j.dump(2) << '\n';
      finish(out, meta);
    }
    paths.push_back(csv);
    paths.push_back(meta);
  }
  return paths;
}

}  // namespace

std::vector<fs::path> export_artifacts(const Descriptor& d, const std::string& what, const ExportOptions& opt) {
  if (what == "sigma") return export_sigma(d, opt);
  if (what == "fiber") return export_fiber(d, opt);
  if (what == "field") return export_field(d, opt);
  throw Error(ErrorCode::SchemaError, "what: expected sigma, fiber or field, got \"" + what + "\"");
}

}  // namespace z2h
