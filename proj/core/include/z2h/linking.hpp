#pragma once

#include <span>
#include <vector>

#include "z2h/fiber.hpp"
#include "z2h/polyline.hpp"

namespace z2h {

/// Point of S^3 maximizing the distance to every vertex of `curves` among a
/// fixed pseudo-random candidate set (deterministic).
std::vector<double> choose_projection_pole(const std::vector<const Polyline*>& curves);

/// Stereographic projection of a curve on S^3 from `pole` to R^3.
Polyline stereographic_to_r3(const Polyline& curve, std::span<const double> pole);

/// Smallest distance between the segments of two closed 3D polylines.
double min_segment_distance(const Polyline& c1, const Polyline& c2);

/// Gauss double integral (1/4pi) sum (r_i - r_j) . (d_i x d_j) / |r_i - r_j|^3
/// over segment midpoints. Throws CurvesTooClose when the curves come within
/// 1e-3 of each other.
double gauss_linking(const Polyline& c1, const Polyline& c2);

/// Linking number from signed crossings of a planar projection (half the sum
/// of crossing signs). Independent of gauss_linking.
double crossing_linking(const Polyline& c1, const Polyline& c2);

/// Both curves on S^3: project from a common pole, then gauss_linking.
double s3_gauss_linking(const Polyline& c1, const Polyline& c2);
double s3_crossing_linking(const Polyline& c1, const Polyline& c2);

/// Degree of the nearest-point projection of `curve` onto the closed `core`,
/// counted as signed crossings through the meridian disc at the core's first
/// vertex. Throws NotInTube when some vertex is `tube` or farther from the core.
int covering_degree(const Polyline& curve, const Polyline& core, double tube = 0.3);

/// Fibers are sampled with `samples` points each (the core once around).
int covering_degree(const Fiber& fiber, const Fiber& core, std::size_t samples = 1024, double tube = 0.3);

/// Largest distance from a vertex of `curve` to the polyline `core`.
double max_distance_to(const Polyline& curve, const Polyline& core);

}  // namespace z2h
