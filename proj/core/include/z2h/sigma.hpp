#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "z2h/defining_function.hpp"
#include "z2h/polyline.hpp"

namespace z2h {

/// Axis-aligned box in the real coordinates of C^2.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  bool contains(std::span<const double> x) const;
  static Box cube(std::size_t dim, double half_width);
};

/// Residual bound guaranteed for every sampled point of the zero set.
inline constexpr double kSigmaResidual = 1e-9;

/// Point samples of Sigma = {h = 0} inside `window` for bivariate h.
///
/// Products of lines come back as one exact parameterized sample cloud per
/// line. Other kinds are sliced twice: for fixed z on a regular grid the
/// w-roots are found from the companion matrix (and vice versa), which picks up
/// components parallel to either axis. Every point satisfies |h| < 1e-9.
/// Throws EmptyIntersection when no point falls in the window.
std::vector<Polyline> sample_sigma(const DefiningFunction& h, const Box& window, std::size_t count);

/// Distance from x to Sigma, capped at `search_radius`. Exact for products of
/// lines and univariate polynomials; otherwise found by a two-level slicing
/// search within `search_radius` of x (accurate to a few 1e-3).
double distance_to_sigma(const DefiningFunction& h, std::span<const double> x, double search_radius = 0.5);

/// Samples of Sigma in the window with |grad h| >= min_gradient, reduced
/// deterministically to at most `count` points.
std::vector<std::vector<double>> smooth_sigma_points(const DefiningFunction& h, const Box& window, std::size_t count,
                                                     double min_gradient, std::uint64_t seed);

/// Unit real vector along conj(grad h) at x; moving along it changes h along
/// the positive real axis to first order.
std::vector<double> complex_normal(const DefiningFunction& h, std::span<const double> x);

/// Sigma intersected with the sphere of radius r, for a product of lines: one
/// closed circle per line, sampled at `count` equally spaced angles.
std::vector<Polyline> sigma_on_sphere(const DefiningFunction& lines, double radius, std::size_t count);

/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff_distance(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b);

/// All vertices of a polyline set as a flat list of points.
std::vector<std::vector<double>> collect_points(const std::vector<Polyline>& lines);

}  // namespace z2h
