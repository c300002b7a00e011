#include "z2h/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "z2h/error.hpp"

namespace z2h {
namespace {

double dist4(Cx z0, Cx w0, Cx z1, Cx w1) { return std::sqrt(std::norm(z1 - z0) + std::norm(w1 - w0)); }

// Newton in the sliced variable until |h| < 1e-9 (or give up).
bool polish(const DefiningFunction& h, Cx& z, Cx& w, bool solve_for_w) {
  for (int it = 0; it < 8; ++it) {
    const Cx v = h.value(z, w);
    if (std::abs(v) < 0.1 * kSigmaResidual) return true;
    const Cx d = solve_for_w ? h.dw(z, w) : h.dz(z, w);
    if (std::abs(d) == 0.0) break;
    (solve_for_w ? w : z) -= v / d;
  }
  return std::abs(h.value(z, w)) < kSigmaResidual;
}

void append_point(std::vector<double>& coords, Cx z, Cx w) {
  const std::size_t n = coords.size();
  if (n >= 4 && coords[n - 4] == z.real() && coords[n - 3] == z.imag() && coords[n - 2] == w.real() &&
      coords[n - 1] == w.imag())
    return;
  coords.insert(coords.end(), {z.real(), z.imag(), w.real(), w.imag()});
}

std::vector<Polyline> sample_lines(const ProductOfLines& lines, const Box& window, std::size_t count) {
  double extent = 0.0;
  for (std::size_t k = 0; k < 4; ++k) extent = std::max({extent, std::abs(window.lo[k]), std::abs(window.hi[k])});
  extent *= 2.0;
  const auto g = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
  std::vector<Polyline> out;
  for (const auto& [a, b] : lines.lines) {
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    const Cx vz = b / n, vw = -a / n;
    std::vector<double> coords;
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) {
        const double tr = -extent + 2.0 * extent * (static_cast<double>(i) + 0.5) / static_cast<double>(g);
        const double ti = -extent + 2.0 * extent * (static_cast<double>(j) + 0.5) / static_cast<double>(g);
        const Cx t{tr, ti};
        const Cx z = t * vz, w = t * vw;
        const std::vector<double> x{z.real(), z.imag(), w.real(), w.imag()};
        if (window.contains(x)) append_point(coords, z, w);
      }
    if (coords.size() >= 8) out.emplace_back(4, std::move(coords), false);
  }
  return out;
}

}  // namespace

bool Box::contains(std::span<const double> x) const {
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] < lo[k] || x[k] > hi[k]) return false;
  return true;
}

Box Box::cube(std::size_t dim, double half_width) {
  return Box{std::vector<double>(dim, -half_width), std::vector<double>(dim, half_width)};
}

std::vector<Polyline> sample_sigma(const DefiningFunction& h, const Box& window, std::size_t count) {
  if (h.is_univariate()) throw Error(ErrorCode::InvalidArgument, "sample_sigma expects a bivariate defining function");
  if (window.lo.size() != 4 || window.hi.size() != 4) throw Error(ErrorCode::InvalidArgument, "window must be 4D");
  std::vector<Polyline> out;
  if (const auto* lines = std::get_if<ProductOfLines>(&h.params())) {
    out = sample_lines(*lines, window, count);
  } else {
    const auto g = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(std::max<std::size_t>(count / 2, 1)))));
    for (bool slice_z : {true, false}) {
      const std::size_t k0 = slice_z ? 0 : 2;
      std::vector<double> coords;
      for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
          const double re = window.lo[k0] + (window.hi[k0] - window.lo[k0]) * (static_cast<double>(i) + 0.5) / static_cast<double>(g);
          const double im = window.lo[k0 + 1] + (window.hi[k0 + 1] - window.lo[k0 + 1]) * (static_cast<double>(j) + 0.5) / static_cast<double>(g);
          const Cx fixed{re, im};
          const auto roots = poly_roots(slice_z ? h.coefficients_in_w(fixed) : h.coefficients_in_z(fixed));
          for (Cx r : roots) {
            Cx z = slice_z ? fixed : r;
            Cx w = slice_z ? r : fixed;
            if (!polish(h, z, w, slice_z)) continue;
            const std::vector<double> x{z.real(), z.imag(), w.real(), w.imag()};
            if (window.contains(x)) append_point(coords, z, w);
          }
        }
      if (coords.size() >= 8) out.emplace_back(4, std::move(coords), false);
    }
  }
  if (out.empty()) throw Error(ErrorCode::EmptyIntersection, "no point of Sigma inside the window");
  return out;
}

double distance_to_sigma(const DefiningFunction& h, std::span<const double> x, double search_radius) {
  if (h.is_univariate()) {
    double best = search_radius;
    for (Cx r : poly_roots(std::get<UnivariatePolynomial>(h.params()).coeffs))
      best = std::min(best, std::abs(r - z_of(x)));
    return best;
  }
  const Cx z0 = z_of(x), w0 = w_of(x);
  if (const auto* lines = std::get_if<ProductOfLines>(&h.params())) {
    double best = search_radius;
    for (const auto& [a, b] : lines->lines)
      best = std::min(best, std::abs(a * z0 + b * w0) / std::sqrt(std::norm(a) + std::norm(b)));
    return best;
  }
  double best = search_radius;
  for (bool slice_z : {true, false}) {
    const Cx origin = slice_z ? z0 : w0;
    Cx center = origin;
    double half = search_radius;
    for (int level = 0; level < 2; ++level) {
      const int n = level == 0 ? 25 : 11;
      const double step = 2.0 * half / (n - 1);
      Cx best_center = center;
      double level_best = best;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Cx fixed = center + Cx{-half + step * i, -half + step * j};
          if (std::abs(fixed - origin) > search_radius) continue;
          const auto roots = poly_roots(slice_z ? h.coefficients_in_w(fixed) : h.coefficients_in_z(fixed));
          for (Cx r : roots) {
            const double d = slice_z ? dist4(z0, w0, fixed, r) : dist4(z0, w0, r, fixed);
            if (d < level_best) {
              level_best = d;
              best_center = fixed;
            }
          }
        }
      best = std::min(best, level_best);
      center = best_center;
      half = step;
    }
  }
  return best;
}

std::vector<std::vector<double>> smooth_sigma_points(const DefiningFunction& h, const Box& window, std::size_t count,
                                                     double min_gradient, std::uint64_t seed) {
  std::vector<std::vector<double>> pts;
  for (const auto& line : sample_sigma(h, window, std::max<std::size_t>(count * 8, 64))) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      auto p = line.point(i);
      const Cx z = z_of(p), w = w_of(p);
      const double g = std::sqrt(std::norm(h.dz(z, w)) + std::norm(h.dw(z, w)));
      if (g >= min_gradient) pts.emplace_back(p.begin(), p.end());
    }
  }
  std::mt19937_64 rng(seed);
  std::shuffle(pts.begin(), pts.end(), rng);
  if (pts.size() > count) pts.resize(count);
  return pts;
}

std::vector<double> complex_normal(const DefiningFunction& h, std::span<const double> x) {
  const Cx z = z_of(x), w = w_of(x);
  const Cx nz = std::conj(h.dz(z, w)), nw = std::conj(h.dw(z, w));
  const double n = std::sqrt(std::norm(nz) + std::norm(nw));
  if (n == 0.0) throw Error(ErrorCode::InvalidArgument, "gradient vanishes; no normal direction");
  return {nz.real() / n, nz.imag() / n, nw.real() / n, nw.imag() / n};
}

std::vector<Polyline> sigma_on_sphere(const DefiningFunction& h, double radius, std::size_t count) {
  const auto* lines = std::get_if<ProductOfLines>(&h.params());
  if (!lines) throw Error(ErrorCode::InvalidArgument, "sigma_on_sphere expects a product of lines");
  if (count < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 samples per circle");
  std::vector<Polyline> out;
  for (const auto& [a, b] : lines->lines) {
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    const Cx vz = b / n, vw = -a / n;
    std::vector<double> coords;
    for (std::size_t i = 0; i < count; ++i) {
      const Cx t = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count));
      const Cx z = t * vz, w = t * vw;
      coords.insert(coords.end(), {z.real(), z.imag(), w.real(), w.imag()});
    }
    out.emplace_back(4, std::move(coords), true);
  }
  return out;
}

double hausdorff_distance(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  auto directed = [](const auto& from, const auto& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) {
        double d = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) d += (p[k] - q[k]) * (p[k] - q[k]);
        best = std::min(best, d);
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

std::vector<std::vector<double>> collect_points(const std::vector<Polyline>& lines) {
  std::vector<std::vector<double>> out;
  for (const auto& l : lines)
    for (std::size_t i = 0; i < l.size(); ++i) out.emplace_back(l.point(i).begin(), l.point(i).end());
  return out;
}

}  // namespace z2h
