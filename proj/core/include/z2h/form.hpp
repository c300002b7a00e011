#pragma once

#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "z2h/branch.hpp"
#include "z2h/defining_function.hpp"
#include "z2h/smooth_map.hpp"

namespace z2h {

/// Real covector in the ambient coordinates of a form. For C^2 the order is
/// (Re z, Im z, Re w, Im w); for R^3 it is (x, y, z).
struct Covector {
  std::vector<double> c;

  std::size_t size() const { return c.size(); }
  double operator[](std::size_t i) const { return c[i]; }
  double norm() const;
};

/// A Z2 harmonic function / 1-form, evaluated against a BranchState of its
/// branch field (the function whose square root carries the sign ambiguity).
///
/// Constructions:
///  * ReHPower     f = Re h^{(2k+1)/2},  omega = df, on C^2 (or C for univariate h)
///  * PlanarSqrt   omega = Re(p(z)^{1/2} dz) on R^2
///  * AxialProduct f = 2 z Re(w^{(2k+1)/2}) with w = x + iy on R^3,
///                 omega = 2 Re(w^{(2k+1)/2}) dz + (2k+1) z Re(w^{(2k-1)/2} dw)
///  * QuadraticDifferentialSqrt  omega = Re sqrt(q(z) dz^2) on R^2
///  * Pullback     map^* base
class Z2Form {
 public:
  struct ReHPower {
    DefiningFunction h;
    HalfPower k;
  };
  struct PlanarSqrt {
    DefiningFunction p;
  };
  struct AxialProduct {
    HalfPower k;
  };
  struct QuadraticDifferentialSqrt {
    DefiningFunction q;
  };
  struct Pullback {
    SmoothMap map;
    std::shared_ptr<const Z2Form> base;
  };
  using Construction = std::variant<ReHPower, PlanarSqrt, AxialProduct, QuadraticDifferentialSqrt, Pullback>;

  static Z2Form re_h_power(DefiningFunction h, HalfPower k = {});
  static Z2Form planar(DefiningFunction p);
  static Z2Form axial(HalfPower k = {});
  static Z2Form quadratic_differential(DefiningFunction q);
  static Z2Form pullback(SmoothMap map, Z2Form base);

  const Construction& construction() const { return construction_; }
  int dimension() const;

  ComplexField branch_field() const;
  BranchState principal_state(std::span<const double> x) const;
  BranchState continue_to(const BranchState& from, std::span<const double> to) const;

  /// Whether eval_f is available (planar and quadratic forms only when the
  /// polynomial has degree <= 1).
  bool has_potential() const;
  double eval_f(const BranchState& state) const;
  Covector eval_omega(const BranchState& state) const;

  /// Single-valued restriction near `anchor`: every query point is reached by
  /// straight-line continuation from the anchor.
  std::function<double(std::span<const double>)> local_potential(const BranchState& anchor) const;
  std::function<Covector(std::span<const double>)> local_omega(const BranchState& anchor) const;

 private:
  explicit Z2Form(Construction c) : construction_(std::move(c)) {}
  Construction construction_;
};

/// Covector of 2 Re(w^{3/2}) dz + 3 z Re(w^{1/2} dw) on R^3 at (Re w, Im w, z),
/// on the sheet `sign` relative to the principal root of w.
Covector eval_r3_form(double z_coord, Cx w, int sign);

/// Re(sign * p^{1/2} dz) at the state's point.
Covector eval_planar(const DefiningFunction& p, const BranchState& state);

/// ReHPower form of h = (z - b)(w - c) - a with k = 1.
Z2Form family_nodal(Cx a, Cx b, Cx c);

}  // namespace z2h
