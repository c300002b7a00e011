#include "z2h/linking.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "z2h/error.hpp"

namespace z2h {
namespace {

using Vec = Eigen::VectorXd;

Vec vec(std::span<const double> p) { return Eigen::Map<const Vec>(p.data(), static_cast<Eigen::Index>(p.size())); }

double segment_segment_distance(const Vec& p1, const Vec& q1, const Vec& p2, const Vec& q2) {
  const Vec d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
  const double c = d1.dot(r), b = d1.dot(d2);
  const double denom = a * e - b * b;
  double s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
  double t = (b * s + f) / e;
  if (t < 0.0) {
    t = 0.0;
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (t > 1.0) {
    t = 1.0;
    s = std::clamp((b - c) / a, 0.0, 1.0);
  }
  return ((p1 + s * d1) - (p2 + t * d2)).norm();
}

// Distance from x to segment [a, b] and the clamped segment parameter.
std::pair<double, double> point_segment(const Vec& x, const Vec& a, const Vec& b) {
  const Vec d = b - a;
  const double t = std::clamp((x - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
  return {(a + t * d - x).norm(), t};
}

void require_closed_3d(const Polyline& c) {
  if (c.dim() != 3 || !c.closed()) throw Error(ErrorCode::InvalidArgument, "expected a closed 3D polyline");
}

Eigen::Matrix3d generic_rotation() {
  return (Eigen::AngleAxisd(0.3711, Eigen::Vector3d::UnitZ()) * Eigen::AngleAxisd(0.9127, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(0.1433, Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

}  // namespace

std::vector<double> choose_projection_pole(const std::vector<const Polyline*>& curves) {
  std::mt19937_64 rng(0x5eedf00dULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> best(4, 0.0);
  double best_d = -1.0;
  for (int c = 0; c < 4096; ++c) {
    Eigen::Vector4d p(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    p.normalize();
    double d = std::numeric_limits<double>::infinity();
    for (const Polyline* curve : curves) {
      if (curve->dim() != 4) throw Error(ErrorCode::InvalidArgument, "projection pole needs curves on S^3");
      const std::size_t stride = std::max<std::size_t>(1, curve->size() / 256);
      for (std::size_t i = 0; i < curve->size() && d > best_d; i += stride)
        d = std::min(d, (vec(curve->point(i)) - p).norm());
    }
    if (d > best_d) {
      best_d = d;
      best.assign(p.data(), p.data() + 4);
    }
  }
  return best;
}

Polyline stereographic_to_r3(const Polyline& curve, std::span<const double> pole) {
  if (curve.dim() != 4 || pole.size() != 4) throw Error(ErrorCode::InvalidArgument, "stereographic projection needs S^3 data");
  const Eigen::Vector4d P = Eigen::Map<const Eigen::Vector4d>(pole.data());
  std::vector<Eigen::Vector4d> basis;
  for (int k = 0; k < 4 && basis.size() < 3; ++k) {
    Eigen::Vector4d e = Eigen::Vector4d::Unit(k);
    e -= e.dot(P) * P;
    for (const auto& b : basis) e -= e.dot(b) * b;
    if (e.norm() > 1e-6) basis.push_back(e.normalized());
  }
  std::vector<double> out;
  out.reserve(3 * curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Eigen::Vector4d x = Eigen::Map<const Eigen::Vector4d>(curve.point(i).data());
    const double d = 1.0 - x.dot(P);
    if (d < 1e-12) throw Error(ErrorCode::ImageAtInfinity, "curve passes through the projection pole");
    for (const auto& b : basis) out.push_back(x.dot(b) / d);
  }
  return Polyline(3, std::move(out), curve.closed());
}

double min_segment_distance(const Polyline& c1, const Polyline& c2) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c1.segment_count(); ++i) {
    const Vec a = vec(c1.point(i)), b = vec(c1.point((i + 1) % c1.size()));
    for (std::size_t j = 0; j < c2.segment_count(); ++j)
      best = std::min(best, segment_segment_distance(a, b, vec(c2.point(j)), vec(c2.point((j + 1) % c2.size()))));
  }
  return best;
}

double gauss_linking(const Polyline& c1, const Polyline& c2) {
  require_closed_3d(c1);
  require_closed_3d(c2);
  if (min_segment_distance(c1, c2) <= 1e-3) throw Error(ErrorCode::CurvesTooClose, "curves closer than 1e-3");
  auto mids = [](const Polyline& c, std::vector<Eigen::Vector3d>& m, std::vector<Eigen::Vector3d>& d) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Eigen::Vector3d a(c.point(i).data()), b(c.point((i + 1) % c.size()).data());
      m.push_back(0.5 * (a + b));
      d.push_back(b - a);
    }
  };
  std::vector<Eigen::Vector3d> m1, d1, m2, d2;
  mids(c1, m1, d1);
  mids(c2, m2, d2);
  double acc = 0.0;
  for (std::size_t i = 0; i < m1.size(); ++i)
    for (std::size_t j = 0; j < m2.size(); ++j) {
      const Eigen::Vector3d r = m1[i] - m2[j];
      const double n = r.norm();
      acc += r.dot(d1[i].cross(d2[j])) / (n * n * n);
    }
  return acc / (4.0 * std::numbers::pi);
}

double crossing_linking(const Polyline& c1, const Polyline& c2) {
  require_closed_3d(c1);
  require_closed_3d(c2);
  const Eigen::Matrix3d rot = generic_rotation();
  auto rotated = [&](const Polyline& c) {
    std::vector<Eigen::Vector3d> out;
    for (std::size_t i = 0; i < c.size(); ++i) out.push_back(rot * Eigen::Vector3d(c.point(i).data()));
    return out;
  };
  const auto a = rotated(c1), b = rotated(c2);
  int total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Eigen::Vector3d& p = a[i];
    const Eigen::Vector3d u = a[(i + 1) % a.size()] - p;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Eigen::Vector3d& q = b[j];
      const Eigen::Vector3d v = b[(j + 1) % b.size()] - q;
      const double cross = u.x() * v.y() - u.y() * v.x();
      if (cross == 0.0) continue;
      const Eigen::Vector3d r = q - p;
      const double s = (r.x() * v.y() - r.y() * v.x()) / cross;
      const double t = (r.x() * u.y() - r.y() * u.x()) / cross;
      if (s < 0.0 || s >= 1.0 || t < 0.0 || t >= 1.0) continue;
      const double height = (p.z() + s * u.z()) - (q.z() + t * v.z());
      total += (height * cross > 0.0) ? 1 : -1;
    }
  }
  return 0.5 * total;
}

double s3_gauss_linking(const Polyline& c1, const Polyline& c2) {
  const auto pole = choose_projection_pole({&c1, &c2});
  return gauss_linking(stereographic_to_r3(c1, pole), stereographic_to_r3(c2, pole));
}

double s3_crossing_linking(const Polyline& c1, const Polyline& c2) {
  const auto pole = choose_projection_pole({&c1, &c2});
  return crossing_linking(stereographic_to_r3(c1, pole), stereographic_to_r3(c2, pole));
}

double max_distance_to(const Polyline& curve, const Polyline& core) {
  double worst = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Vec x = vec(curve.point(i));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < core.segment_count(); ++j)
      best = std::min(best, point_segment(x, vec(core.point(j)), vec(core.point((j + 1) % core.size()))).first);
    worst = std::max(worst, best);
  }
  return worst;
}

int covering_degree(const Polyline& curve, const Polyline& core, double tube) {
  if (!curve.closed() || !core.closed()) throw Error(ErrorCode::InvalidArgument, "covering degree needs closed curves");
  if (curve.dim() != core.dim()) throw Error(ErrorCode::InvalidArgument, "curve and core dimensions differ");
  std::vector<double> arclen{0.0};
  for (std::size_t j = 0; j < core.segment_count(); ++j)
    arclen.push_back(arclen.back() + (vec(core.point((j + 1) % core.size())) - vec(core.point(j))).norm());
  const double length = arclen.back();

  std::vector<double> param(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Vec x = vec(curve.point(i));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < core.segment_count(); ++j) {
      const auto [d, t] = point_segment(x, vec(core.point(j)), vec(core.point((j + 1) % core.size())));
      if (d < best) {
        best = d;
        param[i] = arclen[j] + t * (arclen[j + 1] - arclen[j]);
      }
    }
    if (best >= tube) throw Error(ErrorCode::NotInTube, "curve leaves the tubular neighbourhood of the core");
  }
  // Signed crossings of the meridian disc at parameter 0 (mod length).
  int crossings = 0;
  double unwrapped = param[0];
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double delta = std::remainder(param[(i + 1) % curve.size()] - param[i], length);
    const double before = std::floor(unwrapped / length);
    unwrapped += delta;
    crossings += static_cast<int>(std::floor(unwrapped / length) - before);
  }
  return crossings;
}

int covering_degree(const Fiber& f, const Fiber& core, std::size_t samples, double tube) {
  return covering_degree(f.sample(samples), core.sample(samples), tube);
}

}  // namespace z2h
