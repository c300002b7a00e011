#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "z2h/fd.hpp"

namespace z2h {

/// Coordinate chart of a Riemannian manifold embedded in Euclidean space,
/// with its metric tensor in closed form.
///
/// * Flat(n)        identity chart of R^n.
/// * RoundS2        u = (Re xi, Im xi) with xi the stereographic coordinate
///                  from (-1, 0, 0) (see SmoothMap::stereographic); metric
///                  4 / (1 + |xi|^2)^2 times the identity.
/// * RoundS3        Hopf coordinates (eta, a, b) -> (cos eta e^{ia}, sin eta e^{ib})
///                  with eta in (0, pi/2); metric diag(1, cos^2 eta, sin^2 eta).
class MetricChart {
 public:
  enum class Kind { Flat, RoundS2, RoundS3 };

  static MetricChart flat(int dim);
  static MetricChart round_s2();
  static MetricChart round_s3();

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  int ambient_dim() const;

  /// Whether u lies in the open parameter domain.
  bool contains(std::span<const double> u) const;
  std::vector<double> embed(std::span<const double> u) const;
  Eigen::MatrixXd metric(std::span<const double> u) const;

 private:
  MetricChart(Kind kind, int dim) : kind_(kind), dim_(dim) {}
  Kind kind_;
  int dim_;
};

/// Laplace-Beltrami operator (1/sqrt g) d_i (sqrt g g^{ij} d_j u) of `field`
/// (a function of the ambient point) at chart parameter u, expanded as
/// g^{ij} d_ij u + (1/sqrt g) d_i(sqrt g g^{ij}) d_j u with central differences
/// of step `step` for u and for the metric coefficients. Second order.
/// Throws ChartBoundary when the stencil leaves the chart domain.
double laplace_beltrami(const MetricChart& chart, const ScalarField& field, std::span<const double> u, double step);

/// Euclidean Laplacian at x in R^4 of the degree-0 homogeneous extension
/// y -> field(y / |y|). For x on S^3 this equals the round-sphere
/// Laplace-Beltrami operator of `field`.
double homogeneous_extension_laplacian(const ScalarField& field, std::span<const double> x, double step);

}  // namespace z2h
