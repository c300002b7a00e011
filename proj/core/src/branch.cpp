#include "z2h/branch.hpp"

#include <cmath>
#include <numbers>

#include "z2h/error.hpp"

namespace z2h {
namespace {

Cx checked_eval(const ComplexField& h, std::span<const double> x, ErrorCode on_zero) {
  const Cx v = h(x);
  if (!is_finite(v)) throw Error(ErrorCode::InvalidArgument, "tracked function is not finite");
  if (std::abs(v) < kBranchLocusEps) throw Error(on_zero, "|h| below 1e-8 on the path");
  return v;
}

Cx nearest_root(Cx h_value, Cx previous) {
  const Cx s = principal_sqrt(h_value);
  return std::abs(s - previous) <= std::abs(s + previous) ? s : -s;
}

void lerp(std::span<const double> a, std::span<const double> b, double t, std::vector<double>& out) {
  out.resize(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + t * (b[k] - a[k]);
}

// Walks one segment with dyadic step control; appends accepted states when
// `trace` is non-null.
BranchState walk_segment(const ComplexField& h, const BranchState& from, std::span<const double> b,
                         std::vector<BranchState>* trace) {
  const std::vector<double> a = from.at;
  BranchState cur = from;
  std::vector<double> x;
  double t = 0.0;
  int depth = 0;
  while (t < 1.0) {
    const double dt = std::ldexp(1.0, -depth);
    const double t_next = std::min(1.0, t + dt);
    // The endpoint ratio only sees arg h mod 2 pi; the midpoint catches
    // steps that wind most of a turn.
    lerp(a, b, 0.5 * (t + t_next), x);
    const Cx mid = checked_eval(h, x, ErrorCode::PathHitsBranchLocus);
    lerp(a, b, t_next, x);
    const Cx hv = checked_eval(h, x, ErrorCode::PathHitsBranchLocus);
    if (std::abs(std::arg(mid / cur.h_value)) + std::abs(std::arg(hv / mid)) >= std::numbers::pi / 2) {
      if (++depth > kMaxRefinementDepth)
        throw Error(ErrorCode::RefinementLimit, "segment needs more than 2^20 subdivisions");
      continue;
    }
    cur.at = x;
    cur.h_value = hv;
    cur.sqrt_value = nearest_root(hv, cur.sqrt_value);
    cur.sign = relative_sign(hv, cur.sqrt_value);
    if (trace) trace->push_back(cur);
    t = t_next;
    // Coarsen again once the position is aligned with the larger step.
    while (depth > 0 && std::fmod(t, std::ldexp(1.0, -(depth - 1))) == 0.0) --depth;
  }
  cur.at.assign(b.begin(), b.end());
  return cur;
}

BranchState run(const ComplexField& h, const Polyline& path, const BranchState& start,
                std::vector<BranchState>* trace) {
  if (start.at.size() != path.dim())
    throw Error(ErrorCode::InvalidArgument, "start state dimension does not match the path");
  auto p0 = path.point(0);
  for (std::size_t k = 0; k < p0.size(); ++k)
    if (std::abs(start.at[k] - p0[k]) > 1e-12 * (1.0 + std::abs(p0[k])))
      throw Error(ErrorCode::InvalidArgument, "start state is not at the first path point");
  BranchState cur = start;
  cur.at.assign(p0.begin(), p0.end());
  cur.h_value = checked_eval(h, cur.at, ErrorCode::PathHitsBranchLocus);
  if (trace) trace->push_back(cur);
  for (std::size_t s = 0; s < path.segment_count(); ++s)
    cur = walk_segment(h, cur, path.point((s + 1) % path.size()), trace);
  return cur;
}

}  // namespace

int relative_sign(Cx h_value, Cx sqrt_value) {
  const Cx p = principal_sqrt(h_value);
  return std::abs(sqrt_value - p) <= std::abs(sqrt_value + p) ? 1 : -1;
}

BranchState principal_state(const ComplexField& h, std::span<const double> at) {
  return state_with_sign(h, at, 1);
}

BranchState state_with_sign(const ComplexField& h, std::span<const double> at, int sign) {
  BranchState s;
  s.at.assign(at.begin(), at.end());
  s.h_value = checked_eval(h, at, ErrorCode::OnBranchLocus);
  s.sign = sign >= 0 ? 1 : -1;
  s.sqrt_value = static_cast<double>(s.sign) * principal_sqrt(s.h_value);
  return s;
}

BranchState continue_branch(const ComplexField& h, const Polyline& path, const BranchState& start) {
  return run(h, path, start, nullptr);
}

std::vector<BranchState> trace_branch(const ComplexField& h, const Polyline& path,
                                      const BranchState& start) {
  std::vector<BranchState> out;
  run(h, path, start, &out);
  return out;
}

BranchState continue_to(const ComplexField& h, const BranchState& from, std::span<const double> to) {
  bool same = true;
  for (std::size_t k = 0; k < to.size(); ++k) same = same && to[k] == from.at[k];
  if (same) return from;
  BranchState start = from;
  start.h_value = checked_eval(h, from.at, ErrorCode::PathHitsBranchLocus);
  return walk_segment(h, start, to, nullptr);
}

int monodromy(const ComplexField& h, const Polyline& loop) {
  if (!loop.closed()) throw Error(ErrorCode::InvalidArgument, "monodromy needs a closed loop");
  const BranchState start = principal_state(h, loop.point(0));
  const BranchState end = continue_branch(h, loop, start);
  return end.sign;
}

int winding_number(const ComplexField& h, const Polyline& loop, std::size_t samples_per_segment) {
  if (!loop.closed()) throw Error(ErrorCode::InvalidArgument, "winding number needs a closed loop");
  if (samples_per_segment == 0) samples_per_segment = 1;
  std::vector<double> x;
  double total = 0.0;
  Cx prev = h(loop.point(0));
  for (std::size_t s = 0; s < loop.segment_count(); ++s) {
    auto a = loop.point(s);
    auto b = loop.point((s + 1) % loop.size());
    for (std::size_t j = 1; j <= samples_per_segment; ++j) {
      lerp(a, b, static_cast<double>(j) / static_cast<double>(samples_per_segment), x);
      const Cx cur = h(x);
      total += std::arg(cur / prev);
      prev = cur;
    }
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace z2h
