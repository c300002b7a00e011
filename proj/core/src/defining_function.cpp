#include "z2h/defining_function.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "z2h/error.hpp"

namespace z2h {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<Cx> poly_mul(const std::vector<Cx>& a, const std::vector<Cx>& b) {
  std::vector<Cx> out(a.size() + b.size() - 1, Cx{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void require_finite(Cx v, const char* what) {
  if (!is_finite(v)) throw Error(ErrorCode::InvalidArgument, std::string("non-finite ") + what);
}

}  // namespace

Cx poly_value(const std::vector<Cx>& c, Cx z) {
  Cx acc{};
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

Cx poly_derivative(const std::vector<Cx>& c, Cx z) {
  Cx acc{};
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
  return acc;
}

std::vector<Cx> poly_roots(std::vector<Cx> c) {
  double scale = 0.0;
  for (Cx v : c) scale = std::max(scale, std::abs(v));
  while (!c.empty() && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
  if (c.size() < 2) return {};
  const std::size_t n = c.size() - 1;
  std::vector<Cx> roots;
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 1; i < n; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < n; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
  }
  for (Cx& r : roots) {
    for (int it = 0; it < 4; ++it) {
      const Cx d = poly_derivative(c, r);
      if (std::abs(d) == 0.0) break;
      const Cx step = poly_value(c, r) / d;
      r -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(r))) break;
    }
  }
  std::sort(roots.begin(), roots.end(), [](Cx a, Cx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

DefiningFunction DefiningFunction::product_of_lines(std::vector<std::pair<Cx, Cx>> lines) {
  if (lines.empty()) throw Error(ErrorCode::InvalidArgument, "product of lines needs at least one line");
  for (const auto& [a, b] : lines) {
    require_finite(a, "line coefficient");
    require_finite(b, "line coefficient");
    if (a == Cx{} && b == Cx{}) throw Error(ErrorCode::InvalidArgument, "line coefficients (a, b) must not both vanish");
  }
  return DefiningFunction(ProductOfLines{std::move(lines)});
}

DefiningFunction DefiningFunction::node(Cx a, Cx b, Cx c) {
  require_finite(a, "node parameter");
  require_finite(b, "node parameter");
  require_finite(c, "node parameter");
  return DefiningFunction(Node{a, b, c});
}

DefiningFunction DefiningFunction::ramified_cover(Cx a) {
  require_finite(a, "ramified cover parameter");
  return DefiningFunction(RamifiedCover{a});
}

DefiningFunction DefiningFunction::bivariate(std::vector<std::vector<Cx>> coeffs) {
  if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "empty coefficient table");
  for (const auto& row : coeffs)
    for (Cx v : row) require_finite(v, "polynomial coefficient");
  return DefiningFunction(BivariatePolynomial{std::move(coeffs)});
}

DefiningFunction DefiningFunction::univariate(std::vector<Cx> coeffs) {
  if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "empty coefficient list");
  for (Cx v : coeffs) require_finite(v, "polynomial coefficient");
  return DefiningFunction(UnivariatePolynomial{std::move(coeffs)});
}

Cx DefiningFunction::value(Cx z, Cx w) const {
  return std::visit(
      Overloaded{
          [&](const ProductOfLines& p) {
            Cx acc = 1.0;
            for (const auto& [a, b] : p.lines) acc *= a * z + b * w;
            return acc;
          },
          [&](const Node& n) { return (z - n.b) * (w - n.c) - n.a; },
          [&](const RamifiedCover& r) { return w * w - r.a * (z * z * z + 1.0); },
          [&](const BivariatePolynomial& p) {
            Cx acc{};
            for (std::size_t i = p.coeffs.size(); i-- > 0;) acc = acc * z + poly_value(p.coeffs[i], w);
            return acc;
          },
          [&](const UnivariatePolynomial& p) { return poly_value(p.coeffs, z); },
      },
      params_);
}

Cx DefiningFunction::dz(Cx z, Cx w) const {
  return std::visit(
      Overloaded{
          [&](const ProductOfLines& p) {
            Cx sum{};
            for (std::size_t j = 0; j < p.lines.size(); ++j) {
              Cx term = p.lines[j].first;
              for (std::size_t i = 0; i < p.lines.size(); ++i)
                if (i != j) term *= p.lines[i].first * z + p.lines[i].second * w;
              sum += term;
            }
            return sum;
          },
          [&](const Node& n) { return w - n.c; },
          [&](const RamifiedCover& r) { return -3.0 * r.a * z * z; },
          [&](const BivariatePolynomial& p) {
            Cx acc{};
            for (std::size_t i = p.coeffs.size(); i-- > 1;)
              acc = acc * z + static_cast<double>(i) * poly_value(p.coeffs[i], w);
            return acc;
          },
          [&](const UnivariatePolynomial& p) { return poly_derivative(p.coeffs, z); },
      },
      params_);
}

Cx DefiningFunction::dw(Cx z, Cx w) const {
  return std::visit(
      Overloaded{
          [&](const ProductOfLines& p) {
            Cx sum{};
            for (std::size_t j = 0; j < p.lines.size(); ++j) {
              Cx term = p.lines[j].second;
              for (std::size_t i = 0; i < p.lines.size(); ++i)
                if (i != j) term *= p.lines[i].first * z + p.lines[i].second * w;
              sum += term;
            }
            return sum;
          },
          [&](const Node& n) { return z - n.b; },
          [&](const RamifiedCover&) { return 2.0 * w; },
          [&](const BivariatePolynomial& p) {
            Cx acc{};
            for (std::size_t i = p.coeffs.size(); i-- > 0;) acc = acc * z + poly_derivative(p.coeffs[i], w);
            return acc;
          },
          [&](const UnivariatePolynomial&) { return Cx{}; },
      },
      params_);
}

Cx DefiningFunction::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != domain_dim())
    throw Error(ErrorCode::InvalidArgument, "point dimension does not match the defining function");
  if (is_univariate()) return value(z_of(x), Cx{});
  return value(z_of(x), w_of(x));
}

ComplexField DefiningFunction::field() const {
  return [self = *this](std::span<const double> x) { return self(x); };
}

std::vector<Cx> DefiningFunction::coefficients_in_w(Cx z) const {
  return std::visit(
      Overloaded{
          [&](const ProductOfLines& p) {
            std::vector<Cx> acc{1.0};
            for (const auto& [a, b] : p.lines) acc = poly_mul(acc, {a * z, b});
            return acc;
          },
          [&](const Node& n) { return std::vector<Cx>{-(z - n.b) * n.c - n.a, z - n.b}; },
          [&](const RamifiedCover& r) { return std::vector<Cx>{-r.a * (z * z * z + 1.0), 0.0, 1.0}; },
          [&](const BivariatePolynomial& p) {
            std::size_t deg = 0;
            for (const auto& row : p.coeffs) deg = std::max(deg, row.size());
            std::vector<Cx> out(deg, Cx{});
            Cx zi = 1.0;
            for (const auto& row : p.coeffs) {
              for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j] * zi;
              zi *= z;
            }
            return out;
          },
          [&](const UnivariatePolynomial&) -> std::vector<Cx> {
            throw Error(ErrorCode::InvalidArgument, "univariate polynomial has no w dependence");
          },
      },
      params_);
}

std::vector<Cx> DefiningFunction::coefficients_in_z(Cx w) const {
  return std::visit(
      Overloaded{
          [&](const ProductOfLines& p) {
            std::vector<Cx> acc{1.0};
            for (const auto& [a, b] : p.lines) acc = poly_mul(acc, {b * w, a});
            return acc;
          },
          [&](const Node& n) { return std::vector<Cx>{-n.b * (w - n.c) - n.a, w - n.c}; },
          [&](const RamifiedCover& r) { return std::vector<Cx>{w * w - r.a, 0.0, 0.0, -r.a}; },
          [&](const BivariatePolynomial& p) {
            std::vector<Cx> out;
            for (const auto& row : p.coeffs) out.push_back(poly_value(row, w));
            return out;
          },
          [&](const UnivariatePolynomial& p) { return p.coeffs; },
      },
      params_);
}

}  // namespace z2h
