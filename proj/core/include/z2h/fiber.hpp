#pragma once

#include <array>
#include <cstddef>
#include <utility>

#include "z2h/complex.hpp"
#include "z2h/polyline.hpp"

namespace z2h {

/// Fiber of the Seifert map [z1^p : z2^q] through a basepoint on S^3,
/// parameterized as t -> (e^{iqt} z1, e^{ipt} z2).
///
/// Regular fibers close after t = 2 pi. The singular fiber {z2 = 0} closes
/// after 2 pi / q and {z1 = 0} after 2 pi / p; period() returns the minimal
/// period so that sample() traverses every fiber exactly once.
struct Fiber {
  int p = 1;
  int q = 1;
  Cx z1;
  Cx z2;

  double period() const;
  std::array<double, 4> at(double t) const;
  /// Closed polyline of n points over one period.
  Polyline sample(std::size_t n) const;
  /// Total turning of (arg z1, arg z2) over one period, as integers.
  std::pair<int, int> winding_pair(std::size_t n = 1024) const;
};

enum class Core {
  Z2Zero,  ///< {z2 = 0}, preimage of the chart origin xi = 0
  Z1Zero,  ///< {z1 = 0}, preimage of xi = infinity
};

/// Chart coordinate xi = z2^q / z1^p of the Seifert image (stereographic from
/// (-1, 0, 0); see SmoothMap::stereographic).
Cx seifert_chart(int p, int q, Cx z1, Cx z2);

/// Regular fiber over the chart point `xi`. The basepoint has z1 > 0 real.
/// Throws SingularFiber when xi = 0 (the fiber would be {z2 = 0}) and
/// InvalidArgument for non-coprime or non-positive (p, q).
Fiber fiber(int p, int q, Cx xi);

Fiber singular_fiber(int p, int q, Core core);

/// Chart point whose fiber keeps |z2| = eps, i.e. stays within distance ~eps
/// of the core {z2 = 0}.
Cx chart_point_for_tube_radius(int p, int q, double eps, double phase = 0.0);

}  // namespace z2h
