#pragma once

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "z2h/branch.hpp"
#include "z2h/complex.hpp"

namespace z2h {

/// h(z, w) = prod_j (a_j z + b_j w).
struct ProductOfLines {
  std::vector<std::pair<Cx, Cx>> lines;
};

/// h(z, w) = (z - b)(w - c) - a.
struct Node {
  Cx a, b, c;
};

/// h(z, w) = w^2 - a (z^3 + 1).
struct RamifiedCover {
  Cx a;
};

/// h(z, w) = sum_{i,j} coeffs[i][j] z^i w^j.
struct BivariatePolynomial {
  std::vector<std::vector<Cx>> coeffs;
};

/// p(z) = sum_k coeffs[k] z^k (ascending powers).
struct UnivariatePolynomial {
  std::vector<Cx> coeffs;
};

/// Holomorphic germ with closed-form partial derivatives. Bivariate kinds live
/// on C^2 = R^4 with coordinates (Re z, Im z, Re w, Im w); the univariate kind
/// lives on C = R^2.
class DefiningFunction {
 public:
  using Params = std::variant<ProductOfLines, Node, RamifiedCover, BivariatePolynomial, UnivariatePolynomial>;

  static DefiningFunction product_of_lines(std::vector<std::pair<Cx, Cx>> lines);
  static DefiningFunction node(Cx a, Cx b, Cx c);
  static DefiningFunction ramified_cover(Cx a);
  static DefiningFunction bivariate(std::vector<std::vector<Cx>> coeffs);
  static DefiningFunction univariate(std::vector<Cx> coeffs);

  const Params& params() const { return params_; }
  bool is_univariate() const { return std::holds_alternative<UnivariatePolynomial>(params_); }
  int domain_dim() const { return is_univariate() ? 2 : 4; }

  Cx value(Cx z, Cx w) const;
  Cx dz(Cx z, Cx w) const;
  Cx dw(Cx z, Cx w) const;

  /// Evaluation at a real point of R^2 or R^4.
  Cx operator()(std::span<const double> x) const;
  ComplexField field() const;

  /// As a polynomial in w with coefficients evaluated at z (ascending powers).
  std::vector<Cx> coefficients_in_w(Cx z) const;
  /// As a polynomial in z with coefficients evaluated at w (ascending powers).
  std::vector<Cx> coefficients_in_z(Cx w) const;

 private:
  explicit DefiningFunction(Params p) : params_(std::move(p)) {}
  Params params_;
};

/// Coefficients of a univariate polynomial; helpers shared with the planar forms.
Cx poly_value(const std::vector<Cx>& c, Cx z);
Cx poly_derivative(const std::vector<Cx>& c, Cx z);
/// Roots of sum c_k x^k via the companion matrix, each polished by Newton.
/// Trailing (highest) zero coefficients are dropped first.
std::vector<Cx> poly_roots(std::vector<Cx> c);

}  // namespace z2h
