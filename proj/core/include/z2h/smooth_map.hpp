#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <span>
#include <vector>

#include "z2h/complex.hpp"
#include "z2h/defining_function.hpp"

namespace z2h {

/// Distance from the unit sphere tolerated by the sphere-valued maps.
inline constexpr double kSphereTol = 1e-10;

/// (z, w) in S^3 -> (|z|^2 - |w|^2, 2 z conj(w)) in S^2 (in R + C = R^3).
/// Throws NotOnSphere when | |z|^2 + |w|^2 - 1 | > 1e-10.
std::array<double, 3> hopf(Cx z, Cx w);

/// Smooth map between Euclidean charts with closed-form Jacobian.
///
/// * Hopf          R^4 -> R^3, the formula above extended to all of R^4.
/// * Seifert(p,q)  R^4 -> R^3, [z1^p : z2^q] placed on S^2 by the normalized
///                 Hopf formula; equals Hopf on S^3 when p = q = 1.
/// * Stereographic R^3 -> R^2, projection of S^2 from (-1, 0, 0):
///                 xi = (x2 - i x3) / (1 + x1). With Hopf this gives xi = w / z,
///                 and with Seifert xi = z2^q / z1^p.
/// * Holomorphic   R^4 -> R^2 (or R^2 -> R^2), a DefiningFunction.
/// * Composite     outer o inner.
class SmoothMap {
 public:
  enum class Kind { Identity, Hopf, Seifert, Stereographic, Holomorphic, Composite };

  static SmoothMap identity(int dim);
  static SmoothMap hopf();
  static SmoothMap seifert(int p, int q);
  static SmoothMap stereographic();
  static SmoothMap holomorphic(DefiningFunction h);
  static SmoothMap composite(const SmoothMap& outer, const SmoothMap& inner);

  Kind kind() const { return kind_; }
  int source_dim() const { return source_dim_; }
  int target_dim() const { return target_dim_; }
  int p() const { return p_; }
  int q() const { return q_; }

  std::vector<double> operator()(std::span<const double> x) const;
  /// target_dim x source_dim matrix of partial derivatives.
  Eigen::MatrixXd jacobian(std::span<const double> x) const;

 private:
  SmoothMap(Kind kind, int source_dim, int target_dim) : kind_(kind), source_dim_(source_dim), target_dim_(target_dim) {}

  Kind kind_;
  int source_dim_;
  int target_dim_;
  int p_ = 1;
  int q_ = 1;
  std::shared_ptr<const DefiningFunction> holo_;
  std::shared_ptr<const SmoothMap> outer_;
  std::shared_ptr<const SmoothMap> inner_;
};

/// Stereographic coordinate xi = w / z of the Hopf image; composite of
/// stereographic() and hopf().
SmoothMap hopf_to_plane();

}  // namespace z2h
