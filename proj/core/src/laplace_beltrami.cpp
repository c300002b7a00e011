#include "z2h/laplace_beltrami.hpp"

#include <cmath>
#include <numbers>

#include "z2h/error.hpp"

namespace z2h {

MetricChart MetricChart::flat(int dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "flat chart needs a positive dimension");
  return MetricChart(Kind::Flat, dim);
}

MetricChart MetricChart::round_s2() { return MetricChart(Kind::RoundS2, 2); }
MetricChart MetricChart::round_s3() { return MetricChart(Kind::RoundS3, 3); }

int MetricChart::ambient_dim() const {
  switch (kind_) {
    case Kind::Flat: return dim_;
    case Kind::RoundS2: return 3;
    case Kind::RoundS3: return 4;
  }
  return dim_;
}

bool MetricChart::contains(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != dim_) return false;
  for (double v : u)
    if (!std::isfinite(v)) return false;
  if (kind_ == Kind::RoundS3) return u[0] > 0.0 && u[0] < 0.5 * std::numbers::pi;
  return true;
}

std::vector<double> MetricChart::embed(std::span<const double> u) const {
  if (!contains(u)) throw Error(ErrorCode::ChartBoundary, "parameter outside the chart domain");
  switch (kind_) {
    case Kind::Flat: return {u.begin(), u.end()};
    case Kind::RoundS2: {
      const double n2 = u[0] * u[0] + u[1] * u[1];
      const double d = 1.0 + n2;
      return {(1.0 - n2) / d, 2.0 * u[0] / d, -2.0 * u[1] / d};
    }
    case Kind::RoundS3: {
      const double c = std::cos(u[0]), s = std::sin(u[0]);
      return {c * std::cos(u[1]), c * std::sin(u[1]), s * std::cos(u[2]), s * std::sin(u[2])};
    }
  }
  return {};
}

Eigen::MatrixXd MetricChart::metric(std::span<const double> u) const {
  if (!contains(u)) throw Error(ErrorCode::ChartBoundary, "parameter outside the chart domain");
  switch (kind_) {
    case Kind::Flat: return Eigen::MatrixXd::Identity(dim_, dim_);
    case Kind::RoundS2: {
      const double d = 1.0 + u[0] * u[0] + u[1] * u[1];
      return (4.0 / (d * d)) * Eigen::MatrixXd::Identity(2, 2);
    }
    case Kind::RoundS3: {
      const double c = std::cos(u[0]), s = std::sin(u[0]);
      return Eigen::Vector3d(1.0, c * c, s * s).asDiagonal();
    }
  }
  return {};
}

namespace {

// sqrt(g) g^{-1}
Eigen::MatrixXd weighted_inverse(const MetricChart& chart, std::span<const double> u) {
  const Eigen::MatrixXd g = chart.metric(u);
  const Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::ChartBoundary, "metric is not positive definite");
  return std::sqrt(g.determinant()) * llt.solve(Eigen::MatrixXd::Identity(g.rows(), g.cols()));
}

}  // namespace

double laplace_beltrami(const MetricChart& chart, const ScalarField& field, std::span<const double> u, double step) {
  const int n = chart.dim();
  if (static_cast<int>(u.size()) != n) throw Error(ErrorCode::InvalidArgument, "chart parameter has the wrong dimension");
  std::vector<double> y(u.begin(), u.end());
  auto value = [&](const std::vector<double>& p) {
    if (!chart.contains(p)) throw Error(ErrorCode::ChartBoundary, "finite-difference stencil leaves the chart");
    return field(chart.embed(p));
  };
  auto shifted = [&](int i, double di, int j, double dj) {
    std::vector<double> p = y;
    p[i] += di;
    p[j] += dj;
    return p;
  };

  const double f0 = value(y);
  Eigen::MatrixXd hess(n, n);
  Eigen::VectorXd grad(n);
  for (int i = 0; i < n; ++i) {
    const double fp = value(shifted(i, step, i, 0.0)), fm = value(shifted(i, -step, i, 0.0));
    grad[i] = (fp - fm) / (2.0 * step);
    hess(i, i) = (fp - 2.0 * f0 + fm) / (step * step);
    for (int j = 0; j < i; ++j) {
      const double v = (value(shifted(i, step, j, step)) - value(shifted(i, step, j, -step)) -
                        value(shifted(i, -step, j, step)) + value(shifted(i, -step, j, -step))) /
                       (4.0 * step * step);
      hess(i, j) = hess(j, i) = v;
    }
  }

  const Eigen::MatrixXd g = chart.metric(u);
  const Eigen::MatrixXd ginv = g.inverse();
  const double sqrt_g = std::sqrt(g.determinant());
  double out = (ginv.cwiseProduct(hess)).sum();
  // (1/sqrt g) d_i (sqrt g g^{ij}) d_j u
  for (int i = 0; i < n; ++i) {
    const auto up = shifted(i, step, i, 0.0), dn = shifted(i, -step, i, 0.0);
    if (!chart.contains(up) || !chart.contains(dn)) throw Error(ErrorCode::ChartBoundary, "finite-difference stencil leaves the chart");
    const Eigen::MatrixXd dA = (weighted_inverse(chart, up) - weighted_inverse(chart, dn)) / (2.0 * step);
    out += dA.row(i).dot(grad) / sqrt_g;
  }
  return out;
}

double homogeneous_extension_laplacian(const ScalarField& field, std::span<const double> x, double step) {
  if (x.size() != 4) throw Error(ErrorCode::InvalidArgument, "homogeneous extension expects a point of R^4");
  const ScalarField extended = [&](std::span<const double> y) {
    double r = 0.0;
    for (double v : y) r += v * v;
    r = std::sqrt(r);
    const std::vector<double> unit{y[0] / r, y[1] / r, y[2] / r, y[3] / r};
    return field(unit);
  };
  return fd_laplacian(extended, x, step);
}

}  // namespace z2h
