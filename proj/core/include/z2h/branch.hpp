#pragma once

#include <functional>
#include <span>
#include <vector>

#include "z2h/complex.hpp"
#include "z2h/polyline.hpp"

namespace z2h {

/// A complex-valued function on R^n whose square root is being tracked.
using ComplexField = std::function<Cx(std::span<const double>)>;

/// Proximity cutoff to the zero set of the tracked function.
inline constexpr double kBranchLocusEps = 1e-8;

/// Largest number of dyadic halvings applied to one path segment.
inline constexpr int kMaxRefinementDepth = 20;

/// Continuation record for a square root of h along a path.
///
/// `sign` is +1 exactly when `sqrt_value` is the principal square root of
/// `h_value`, -1 when it is the other root.
struct BranchState {
  std::vector<double> at;
  Cx h_value;
  Cx sqrt_value;
  int sign = 1;
};

/// Sign of `sqrt_value` relative to the principal root of `h_value`.
int relative_sign(Cx h_value, Cx sqrt_value);

/// State at `at` on the principal sheet. Throws OnBranchLocus when |h| < eps.
BranchState principal_state(const ComplexField& h, std::span<const double> at);

/// State at `at` on the sheet selected by `sign`.
BranchState state_with_sign(const ComplexField& h, std::span<const double> at, int sign);

/// Continue `start` along `path` (including the closing segment if the path is
/// closed). Each accepted step changes arg h by less than pi/2 (summed over its
/// two halves, so steps that wind most of a turn are refined); longer steps are
/// halved up to 2^20 times per segment. The root closest to the previous one is
/// selected at every step.
///
/// Throws PathHitsBranchLocus if any sample has |h| < 1e-8 and RefinementLimit
/// if a segment cannot be resolved.
BranchState continue_branch(const ComplexField& h, const Polyline& path, const BranchState& start);

/// Like continue_branch but returns every accepted step, starting with `start`.
std::vector<BranchState> trace_branch(const ComplexField& h, const Polyline& path,
                                      const BranchState& start);

/// Continue from `from` along the straight segment to `to`.
BranchState continue_to(const ComplexField& h, const BranchState& from, std::span<const double> to);

/// +1 or -1: the sign picked up by the principal root after one trip around
/// the closed `loop`.
int monodromy(const ComplexField& h, const Polyline& loop);

/// Winding number of t -> h(loop(t)) about 0, from summed argument increments
/// over `samples_per_segment` uniform samples per segment. No adaptivity and no
/// root tracking; used as an independent check on monodromy().
int winding_number(const ComplexField& h, const Polyline& loop, std::size_t samples_per_segment = 64);

}  // namespace z2h
