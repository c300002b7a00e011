#include "z2h/smooth_map.hpp"

#include <cmath>
#include <numeric>

#include "z2h/error.hpp"

namespace z2h {
namespace {

// Rows (u1, u2, u3) of the unnormalized Hopf formula in coordinates
// (a1, a2, b1, b2), and their gradients.
std::array<double, 3> hopf_raw(double a1, double a2, double b1, double b2) {
  return {a1 * a1 + a2 * a2 - b1 * b1 - b2 * b2, 2.0 * (a1 * b1 + a2 * b2), 2.0 * (a2 * b1 - a1 * b2)};
}

Eigen::Matrix<double, 3, 4> hopf_raw_jacobian(double a1, double a2, double b1, double b2) {
  Eigen::Matrix<double, 3, 4> j;
  j << 2 * a1, 2 * a2, -2 * b1, -2 * b2,
       2 * b1, 2 * b2, 2 * a1, 2 * a2,
      -2 * b2, 2 * b1, 2 * a2, -2 * a1;
  return j;
}

// Real 2x2 block of multiplication by a complex derivative.
Eigen::Matrix2d complex_block(Cx d) {
  Eigen::Matrix2d m;
  m << d.real(), -d.imag(), d.imag(), d.real();
  return m;
}

void check_dim(std::span<const double> x, int dim) {
  if (static_cast<int>(x.size()) != dim) throw Error(ErrorCode::InvalidArgument, "map input has wrong dimension");
}

}  // namespace

std::array<double, 3> hopf(Cx z, Cx w) {
  const double r2 = std::norm(z) + std::norm(w);
  if (std::abs(r2 - 1.0) > kSphereTol) throw Error(ErrorCode::NotOnSphere, "(z, w) is not on the unit 3-sphere");
  return hopf_raw(z.real(), z.imag(), w.real(), w.imag());
}

SmoothMap SmoothMap::identity(int dim) { return SmoothMap(Kind::Identity, dim, dim); }

SmoothMap SmoothMap::hopf() { return SmoothMap(Kind::Hopf, 4, 3); }

SmoothMap SmoothMap::seifert(int p, int q) {
  if (p < 1 || q < 1) throw Error(ErrorCode::InvalidArgument, "Seifert exponents must be positive");
  if (std::gcd(p, q) != 1) throw Error(ErrorCode::InvalidArgument, "Seifert exponents must be coprime");
  SmoothMap m(Kind::Seifert, 4, 3);
  m.p_ = p;
  m.q_ = q;
  return m;
}

SmoothMap SmoothMap::stereographic() { return SmoothMap(Kind::Stereographic, 3, 2); }

SmoothMap SmoothMap::holomorphic(DefiningFunction h) {
  const int dim = h.domain_dim();
  SmoothMap m(Kind::Holomorphic, dim, 2);
  m.holo_ = std::make_shared<const DefiningFunction>(std::move(h));
  return m;
}

SmoothMap SmoothMap::composite(const SmoothMap& outer, const SmoothMap& inner) {
  if (outer.source_dim() != inner.target_dim())
    throw Error(ErrorCode::InvalidArgument, "composite maps have mismatched dimensions");
  SmoothMap m(Kind::Composite, inner.source_dim(), outer.target_dim());
  m.outer_ = std::make_shared<const SmoothMap>(outer);
  m.inner_ = std::make_shared<const SmoothMap>(inner);
  return m;
}

std::vector<double> SmoothMap::operator()(std::span<const double> x) const {
  check_dim(x, source_dim_);
  switch (kind_) {
    case Kind::Identity:
      return {x.begin(), x.end()};
    case Kind::Hopf: {
      auto u = hopf_raw(x[0], x[1], x[2], x[3]);
      return {u.begin(), u.end()};
    }
    case Kind::Seifert: {
      const Cx a = int_power(z_of(x), p_);
      const Cx b = int_power(w_of(x), q_);
      const double n = std::norm(a) + std::norm(b);
      if (n == 0.0) throw Error(ErrorCode::InvalidArgument, "Seifert map undefined at the origin");
      auto u = hopf_raw(a.real(), a.imag(), b.real(), b.imag());
      return {u[0] / n, u[1] / n, u[2] / n};
    }
    case Kind::Stereographic: {
      const double d = 1.0 + x[0];
      if (std::abs(d) < 1e-12) throw Error(ErrorCode::ImageAtInfinity, "stereographic image at infinity");
      return {x[1] / d, -x[2] / d};
    }
    case Kind::Holomorphic: {
      const Cx v = (*holo_)(x);
      return {v.real(), v.imag()};
    }
    case Kind::Composite:
      return (*outer_)((*inner_)(x));
  }
  return {};
}

Eigen::MatrixXd SmoothMap::jacobian(std::span<const double> x) const {
  check_dim(x, source_dim_);
  switch (kind_) {
    case Kind::Identity:
      return Eigen::MatrixXd::Identity(source_dim_, source_dim_);
    case Kind::Hopf:
      return hopf_raw_jacobian(x[0], x[1], x[2], x[3]);
    case Kind::Seifert: {
      const Cx z1 = z_of(x), z2 = w_of(x);
      const Cx a = int_power(z1, p_);
      const Cx b = int_power(z2, q_);
      const double n = std::norm(a) + std::norm(b);
      if (n == 0.0) throw Error(ErrorCode::InvalidArgument, "Seifert map undefined at the origin");
      const auto u = hopf_raw(a.real(), a.imag(), b.real(), b.imag());
      const Eigen::Matrix<double, 3, 4> du = hopf_raw_jacobian(a.real(), a.imag(), b.real(), b.imag());
      Eigen::RowVector4d dn(2 * a.real(), 2 * a.imag(), 2 * b.real(), 2 * b.imag());
      Eigen::Matrix<double, 3, 4> dg;
      for (int r = 0; r < 3; ++r) dg.row(r) = (du.row(r) - (u[r] / n) * dn) / n;
      Eigen::Matrix4d dab = Eigen::Matrix4d::Zero();
      dab.block<2, 2>(0, 0) = complex_block(static_cast<double>(p_) * int_power(z1, p_ - 1));
      dab.block<2, 2>(2, 2) = complex_block(static_cast<double>(q_) * int_power(z2, q_ - 1));
      return dg * dab;
    }
    case Kind::Stereographic: {
      const double d = 1.0 + x[0];
      if (std::abs(d) < 1e-12) throw Error(ErrorCode::ImageAtInfinity, "stereographic image at infinity");
      Eigen::MatrixXd j(2, 3);
      j << -x[1] / (d * d), 1.0 / d, 0.0,
            x[2] / (d * d), 0.0, -1.0 / d;
      return j;
    }
    case Kind::Holomorphic: {
      if (holo_->is_univariate()) return complex_block(holo_->dz(z_of(x), Cx{}));
      const Cx hz = holo_->dz(z_of(x), w_of(x));
      const Cx hw = holo_->dw(z_of(x), w_of(x));
      Eigen::MatrixXd j(2, 4);
      j.block<2, 2>(0, 0) = complex_block(hz);
      j.block<2, 2>(0, 2) = complex_block(hw);
      return j;
    }
    case Kind::Composite: {
      const auto y = (*inner_)(x);
      return outer_->jacobian(y) * inner_->jacobian(x);
    }
  }
  return {};
}

SmoothMap hopf_to_plane() { return SmoothMap::composite(SmoothMap::stereographic(), SmoothMap::hopf()); }

}  // namespace z2h
