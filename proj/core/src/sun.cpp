#include "z2h/sun.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "z2h/error.hpp"
#include "z2h/fd.hpp"

namespace z2h {

double legendre(int k, double t) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "Legendre degree must be nonnegative");
  if (k == 0) return 1.0;
  double prev = 1.0, cur = t;
  for (int n = 1; n < k; ++n) {
    const double next = ((2.0 * n + 1.0) * t * cur - n * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

void check_degree(int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "zonal degree must be nonnegative");
  if (k > kMaxZonalDegree) throw Error(ErrorCode::DegreeTooLarge, "zonal degree above 12");
}

// rho^k P_k(x3 / rho) via the homogeneous recurrence
// (n+1) Z_{n+1} = (2n+1) x3 Z_n - n rho^2 Z_{n-1}, which stays finite at rho = 0.
double zonal_meridian(int k, double s, double x3) {
  const double rho2 = s * s + x3 * x3;
  if (k == 0) return 1.0;
  double prev = 1.0, cur = x3;
  for (int n = 1; n < k; ++n) {
    const double next = ((2.0 * n + 1.0) * x3 * cur - n * rho2 * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double zonal(int k, std::span<const double> x) {
  check_degree(k);
  if (x.size() != 3) throw Error(ErrorCode::InvalidArgument, "zonal harmonics live on R^3");
  return zonal_meridian(k, std::hypot(x[0], x[1]), x[2]);
}

ZonalPolynomial ZonalPolynomial::single(int k, double c) {
  check_degree(k);
  return ZonalPolynomial{{{k, c}}};
}

double ZonalPolynomial::value(double s, double x3) const {
  double acc = 0.0;
  for (const auto& [k, c] : terms) {
    check_degree(k);
    acc += c * zonal_meridian(k, s, x3);
  }
  return acc;
}

double ZonalPolynomial::cutoff_laplacian(double s, double x3, double chi1, double chi2) const {
  const double rho = std::hypot(s, x3);
  double acc = 0.0;
  for (const auto& [k, c] : terms) acc += c * zonal_meridian(k, s, x3) * (chi2 + (2.0 + 2.0 * k) * chi1 / rho);
  return acc;
}

ZonalPolynomial ZonalPolynomial::scaled(double a) const {
  ZonalPolynomial out = *this;
  for (auto& t : out.terms) t.second *= a;
  return out;
}

ZonalPolynomial ZonalPolynomial::plus(const ZonalPolynomial& other) const {
  ZonalPolynomial out = *this;
  out.terms.insert(out.terms.end(), other.terms.begin(), other.terms.end());
  return out;
}

Cutoff::Cutoff(double r1, double r2, Profile profile) : r1_(r1), r2_(r2), profile_(profile) {
  if (!(r1 > 1.0) || !(r2 > r1)) throw Error(ErrorCode::InvalidArgument, "cutoff radii must satisfy 1 < R1 < R2");
}

double Cutoff::value(double rho) const {
  if (rho <= r1_) return 0.0;
  if (rho >= r2_) return 1.0;
  const double t = (rho - r1_) / (r2_ - r1_);
  if (profile_ == Profile::Cubic) return t * t * (3.0 - 2.0 * t);
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double Cutoff::d1(double rho) const {
  if (rho <= r1_ || rho >= r2_) return 0.0;
  const double w = r2_ - r1_, t = (rho - r1_) / w;
  if (profile_ == Profile::Cubic) return 6.0 * t * (1.0 - t) / w;
  return 30.0 * t * t * (1.0 - t) * (1.0 - t) / w;
}

double Cutoff::d2(double rho) const {
  if (rho <= r1_ || rho >= r2_) return 0.0;
  const double w = r2_ - r1_, t = (rho - r1_) / w;
  if (profile_ == Profile::Cubic) return (6.0 - 12.0 * t) / (w * w);
  return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t) / (w * w);
}

double meridian_s(Cx zeta) { return zeta.real() * zeta.real() - zeta.imag() * zeta.imag() + 1.0; }
double meridian_x3(Cx zeta) { return 2.0 * zeta.real() * zeta.imag(); }
int sheet_of(Cx zeta) { return zeta.real() >= 0.0 ? 1 : -1; }

double sheeted_U(const ZonalPolynomial& p, const Cutoff& chi, Cx zeta) {
  const double s = meridian_s(zeta), x3 = meridian_x3(zeta);
  const double c = chi.value(std::hypot(s, x3));
  return c == 0.0 ? 0.0 : sheet_of(zeta) * c * p.value(s, x3);
}

double source_H(const ZonalPolynomial& p, const Cutoff& chi, Cx zeta) {
  const double s = meridian_s(zeta), x3 = meridian_x3(zeta);
  const double rho = std::hypot(s, x3);
  if (rho <= chi.r1() || rho >= chi.r2()) return 0.0;
  return sheet_of(zeta) * p.cutoff_laplacian(s, x3, chi.d1(rho), chi.d2(rho));
}

GridField sample_field(std::shared_ptr<const DoubleCoverGrid> grid, const std::function<double(Cx)>& f) {
  GridField out{grid, std::vector<double>(static_cast<std::size_t>(grid->n()) * grid->n())};
  for (int j = 0; j < grid->n(); ++j)
    for (int i = 0; i < grid->n(); ++i)
      out.values[grid->index(i, j)] = grid->node(i, j) == DoubleCoverGrid::Node::Axis
                                          ? std::numeric_limits<double>::quiet_NaN()
                                          : f(grid->zeta(i, j));
  return out;
}

double GridField::interpolate(Cx zeta) const {
  const DoubleCoverGrid& g = *grid;
  const double h = g.step();
  const double fx = (zeta.real() + g.half_width()) / h - 0.5;
  const double fy = (zeta.imag() + g.half_width()) / h - 0.5;
  const int i0 = static_cast<int>(std::floor(fx)), j0 = static_cast<int>(std::floor(fy));
  if (i0 < 1 || j0 < 1 || i0 + 2 >= g.n() || j0 + 2 >= g.n()) return std::numeric_limits<double>::quiet_NaN();
  auto weights = [](double t) {
    return std::array<double, 4>{-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
                                 -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
  };
  const auto wx = weights(fx - i0), wy = weights(fy - j0);
  double acc = 0.0;
  for (int b = 0; b < 4; ++b) {
    double row = 0.0;
    for (int a = 0; a < 4; ++a) row += wx[a] * at(i0 - 1 + a, j0 - 1 + b);
    acc += wy[b] * row;
  }
  return acc;
}

namespace {

GridField combine(const GridField& a, const GridField& b, double sb) {
  if (a.grid != b.grid) throw Error(ErrorCode::InvalidArgument, "fields live on different grids");
  GridField out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += sb * b.values[i];
  return out;
}

}  // namespace

GridField GridField::operator-(const GridField& other) const { return combine(*this, other, -1.0); }
GridField GridField::operator+(const GridField& other) const { return combine(*this, other, 1.0); }
GridField GridField::operator*(double a) const {
  GridField out = *this;
  for (double& v : out.values) v *= a;
  return out;
}

double LeadingCoefficients::norm() const { return std::hypot(A_plus, A_minus); }

RingProjections ring_projections(const std::function<double(Cx)>& u, std::span<const double> radii,
                                 std::size_t samples) {
  if (samples < 8) throw Error(ErrorCode::InvalidArgument, "too few ring samples");
  RingProjections out;
  for (double r : radii) {
    const double a = std::sqrt(r);
    double c = 0.0, s = 0.0, sq = 0.0;
    for (std::size_t m = 0; m < samples; ++m) {
      const double alpha = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(samples);
      const double v = u(std::polar(a, alpha));
      c += v * std::cos(alpha);
      s += v * std::sin(alpha);
      sq += v * v;
    }
    out.r.push_back(r);
    out.cos_part.push_back(2.0 * c / static_cast<double>(samples));
    out.sin_part.push_back(2.0 * s / static_cast<double>(samples));
    out.rms.push_back(std::sqrt(sq / static_cast<double>(samples)));
  }
  return out;
}

double ring_rms(const std::function<double(Cx)>& u, double r, std::size_t samples) {
  const double v = r;
  return ring_projections(u, std::span<const double>(&v, 1), samples).rms.front();
}

std::vector<double> default_rings(const DoubleCoverGrid& grid, double lo_factor, double hi, std::size_t count) {
  const double h = grid.step();
  return logspace(lo_factor * h * h, hi, count);
}

LeadingCoefficients extract_A1(const RingProjections& rings) {
  const auto m = static_cast<Eigen::Index>(rings.r.size());
  if (m < 3) throw Error(ErrorCode::FitIllConditioned, "need at least three rings");
  Eigen::MatrixXd basis(m, 2);
  Eigen::VectorXd pc(m), ps(m);
  double scale = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double r = rings.r[static_cast<std::size_t>(i)];
    basis(i, 0) = std::sqrt(r);
    basis(i, 1) = r * std::sqrt(r);
    pc[i] = rings.cos_part[static_cast<std::size_t>(i)];
    ps[i] = rings.sin_part[static_cast<std::size_t>(i)];
    scale = std::max(scale, rings.rms[static_cast<std::size_t>(i)]);
  }
  const auto qr = basis.colPivHouseholderQr();
  const Eigen::Vector2d bc = qr.solve(pc), bs = qr.solve(ps);
  const double floor = 1e-10 * scale * std::sqrt(static_cast<double>(m)) + std::numeric_limits<double>::min();
  const double rc = (basis * bc - pc).norm() / (pc.norm() + floor);
  const double rs = (basis * bs - ps).norm() / (ps.norm() + floor);
  if (rc > 0.2 || rs > 0.2) throw Error(ErrorCode::FitIllConditioned, "ring projections are not fitted by r^{1/2}, r^{3/2}");
  return {bc[0], bs[0]};
}

LeadingCoefficients extract_A1(const std::function<double(Cx)>& u, std::span<const double> radii) {
  return extract_A1(ring_projections(u, radii));
}

LeadingCoefficients extract_A1(const GridField& u) {
  const auto radii = default_rings(*u.grid);
  return extract_A1([&](Cx z) { return u.interpolate(z); }, radii);
}

std::vector<double> null_combination(const std::vector<LeadingCoefficients>& columns) {
  const auto k = static_cast<Eigen::Index>(columns.size());
  if (k < 3) throw Error(ErrorCode::NoNullDirection, "need at least three degrees");
  Eigen::MatrixXd a(2, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    a(0, i) = columns[static_cast<std::size_t>(i)].A_plus;
    a(1, i) = columns[static_cast<std::size_t>(i)].A_minus;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  Eigen::VectorXd c = svd.matrixV().col(k - 1);
  Eigen::Index big = 0;
  c.cwiseAbs().maxCoeff(&big);
  if (c[big] < 0.0) c = -c;
  return {c.data(), c.data() + k};
}

double eval_section(const GridField& u, std::span<const double> x, int sheet) {
  if (x.size() != 3) throw Error(ErrorCode::InvalidArgument, "sections are evaluated at points of R^3");
  const Cx zeta = principal_sqrt(Cx{std::hypot(x[0], x[1]) - 1.0, x[2]});
  return u.interpolate(sheet >= 0 ? zeta : -zeta);
}

}  // namespace z2h
