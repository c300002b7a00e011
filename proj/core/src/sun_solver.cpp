#include <cmath>
#include <limits>

#include "z2h/error.hpp"
#include "z2h/sun.hpp"

namespace z2h {
namespace {

constexpr int kDi[4] = {1, -1, 0, 0};
constexpr int kDj[4] = {0, 0, 1, -1};

double face_s(Cx a, Cx b) { return std::max(0.0, meridian_s(0.5 * (a + b))); }

}  // namespace

DoubleCoverGrid::DoubleCoverGrid(int n, double truncation) : n_(n), truncation_(truncation) {
  if (n < 8 || n % 2 != 0) throw Error(ErrorCode::InvalidArgument, "grid size must be even and at least 8");
  if (!(truncation > 1.0)) throw Error(ErrorCode::InvalidArgument, "truncation radius must exceed 1");
  half_width_ = std::sqrt(truncation + 1.0);
  step_ = 2.0 * half_width_ / n;
  const auto total = static_cast<std::size_t>(n) * n;
  nodes_.assign(total, Node::Axis);
  unknowns_.assign(total, -1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Cx z = zeta(i, j);
      const double s = meridian_s(z);
      if (s < 0.0) continue;
      nodes_[index(i, j)] = std::abs(z * z + 1.0) >= truncation ? Node::Dirichlet : Node::Active;
    }
  // Nodes whose every face is closed (next to the axis) carry no equation.
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (nodes_[index(i, j)] != Node::Active) continue;
      double diag = 0.0;
      for (int d = 0; d < 4; ++d) {
        const int a = i + kDi[d], b = j + kDj[d];
        const bool inside = a >= 0 && b >= 0 && a < n && b < n;
        if (inside && nodes_[index(a, b)] == Node::Axis) continue;
        diag += face_s(zeta(i, j), inside ? zeta(a, b) : Cx{coordinate(a), coordinate(b)});
      }
      if (diag == 0.0) nodes_[index(i, j)] = Node::Axis;
    }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (nodes_[index(i, j)] == Node::Active) unknowns_[index(i, j)] = active_count_++;
}

PoissonSolver::PoissonSolver(std::shared_ptr<const DoubleCoverGrid> grid) : grid_(std::move(grid)) {
  const DoubleCoverGrid& g = *grid_;
  const int n = g.n();
  const double h2 = g.step() * g.step();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(g.active_count()) * 5);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int row = g.unknown(i, j);
      if (row < 0) continue;
      double diag = 0.0;
      for (int d = 0; d < 4; ++d) {
        const int a = i + kDi[d], b = j + kDj[d];
        const bool inside = a >= 0 && b >= 0 && a < n && b < n;
        if (inside && g.node(a, b) == DoubleCoverGrid::Node::Axis) continue;
        const double w = face_s(g.zeta(i, j), Cx{g.coordinate(a), g.coordinate(b)}) / h2;
        diag += w;
        if (inside && g.node(a, b) == DoubleCoverGrid::Node::Active) triplets.emplace_back(row, g.unknown(a, b), -w);
      }
      triplets.emplace_back(row, row, diag);
    }
  matrix_.resize(g.active_count(), g.active_count());
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
  factor_.compute(matrix_);
  if (factor_.info() != Eigen::Success) throw Error(ErrorCode::SolverDiverged, "sparse factorization failed");
}

GridField PoissonSolver::solve_chart(const GridField& F) const {
  const DoubleCoverGrid& g = *grid_;
  if (F.grid.get() != &g) throw Error(ErrorCode::InvalidArgument, "source lives on a different grid");
  Eigen::VectorXd rhs(g.active_count());
  for (int j = 0; j < g.n(); ++j)
    for (int i = 0; i < g.n(); ++i)
      if (const int k = g.unknown(i, j); k >= 0) rhs[k] = -F.at(i, j);

  GridField out{grid_, std::vector<double>(F.values.size(), 0.0)};
  const double bnorm = rhs.norm();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(g.active_count());
  last_residual_ = 0.0;
  if (bnorm > 0.0) {
    x = factor_.solve(rhs);
    last_residual_ = (matrix_ * x - rhs).norm() / bnorm;
    if (!(last_residual_ <= 1e-8)) throw Error(ErrorCode::SolverDiverged, "relative residual above 1e-8");
  }
  for (int j = 0; j < g.n(); ++j)
    for (int i = 0; i < g.n(); ++i) {
      const std::size_t idx = g.index(i, j);
      if (const int k = g.unknown(i, j); k >= 0)
        out.values[idx] = x[k];
      else if (g.node(i, j) == DoubleCoverGrid::Node::Axis)
        out.values[idx] = std::numeric_limits<double>::quiet_NaN();
    }
  return out;
}

GridField PoissonSolver::solve(const GridField& H) const {
  GridField F = H;
  for (int j = 0; j < grid_->n(); ++j)
    for (int i = 0; i < grid_->n(); ++i) {
      const Cx z = grid_->zeta(i, j);
      const std::size_t idx = grid_->index(i, j);
      if (grid_->unknown(i, j) >= 0) F.values[idx] = 4.0 * std::norm(z) * meridian_s(z) * H.values[idx];
    }
  return solve_chart(F);
}

SunPipeline::SunPipeline(const SunParams& params)
    : params_(params),
      cutoff_(params.r1, params.r2, params.profile),
      solver_(std::make_shared<const DoubleCoverGrid>(params.grid, params.truncation)) {
  if (params.truncation < params.r2) throw Error(ErrorCode::InvalidArgument, "truncation radius must enclose the cutoff shell");
}

GridField SunPipeline::solve(const ZonalPolynomial& p) const {
  const auto g = grid();
  const GridField H = sample_field(g, [&](Cx z) { return source_H(p, cutoff_, z); });
  const GridField V = solver_.solve(H);
  const GridField U = sample_field(g, [&](Cx z) { return sheeted_U(p, cutoff_, z); });
  return U - V;
}

namespace {

constexpr double kCoreWidth = 0.2;
constexpr double kBumpWidth = 0.35;
const Cx kBumpCentre{1.5, 0.3};

// value, d/dxi, d/deta and Laplacian of exp(-|zeta - c|^2 / w^2)
struct Gauss {
  double v, dx, dy, lap;
};

Gauss gaussian(Cx zeta, Cx c, double w) {
  const Cx d = zeta - c;
  const double w2 = w * w;
  const double v = std::exp(-std::norm(d) / w2);
  return {v, -2.0 * d.real() * v / w2, -2.0 * d.imag() * v / w2, v * (4.0 * std::norm(d) / (w2 * w2) - 4.0 / w2)};
}

}  // namespace

double manufactured_solution(Cx zeta) {
  const Gauss core = gaussian(zeta, {}, kCoreWidth);
  return zeta.real() * core.v + gaussian(zeta, kBumpCentre, kBumpWidth).v - gaussian(zeta, -kBumpCentre, kBumpWidth).v;
}

double manufactured_operator(Cx zeta) {
  const Gauss core = gaussian(zeta, {}, kCoreWidth);
  const Gauss bp = gaussian(zeta, kBumpCentre, kBumpWidth);
  const Gauss bm = gaussian(zeta, -kBumpCentre, kBumpWidth);
  const double x = zeta.real(), y = zeta.imag();
  // V = x g + b+ - b-
  const double vx = core.v + x * core.dx + bp.dx - bm.dx;
  const double vy = x * core.dy + bp.dy - bm.dy;
  const double lap = x * core.lap + 2.0 * core.dx + bp.lap - bm.lap;
  // div(s grad V) with s = x^2 - y^2 + 1
  return meridian_s(zeta) * lap + 2.0 * x * vx - 2.0 * y * vy;
}

namespace {

double manufactured_error(int n, double truncation) {
  const auto grid = std::make_shared<const DoubleCoverGrid>(n, truncation);
  const PoissonSolver solver(grid);
  const GridField F = sample_field(grid, manufactured_operator);
  const GridField V = solver.solve_chart(F);
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (grid->unknown(i, j) >= 0) worst = std::max(worst, std::abs(V.at(i, j) - manufactured_solution(grid->zeta(i, j))));
  return worst;
}

}  // namespace

ManufacturedStudy manufactured_convergence(const std::vector<int>& grids, double truncation) {
  ManufacturedStudy out;
  out.grids = grids;
  for (int n : grids) out.max_errors.push_back(manufactured_error(n, truncation));
  for (std::size_t i = 1; i < out.max_errors.size(); ++i)
    out.orders.push_back(std::log(out.max_errors[i - 1] / out.max_errors[i]) /
                         std::log(static_cast<double>(grids[i]) / grids[i - 1]));
  return out;
}

void require_resolved(int n, double truncation, double tolerance) {
  if (manufactured_error(n, truncation) > tolerance)
    throw Error(ErrorCode::GridTooCoarse, "manufactured solution error above tolerance");
}

}  // namespace z2h
