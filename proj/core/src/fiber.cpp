#include "z2h/fiber.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "z2h/error.hpp"

namespace z2h {
namespace {

void check_pq(int p, int q) {
  if (p < 1 || q < 1) throw Error(ErrorCode::InvalidArgument, "(p, q) must be positive");
  if (std::gcd(p, q) != 1) throw Error(ErrorCode::InvalidArgument, "(p, q) must be coprime");
}

}  // namespace

double Fiber::period() const {
  if (z2 == Cx{}) return 2.0 * std::numbers::pi / q;
  if (z1 == Cx{}) return 2.0 * std::numbers::pi / p;
  return 2.0 * std::numbers::pi;
}

std::array<double, 4> Fiber::at(double t) const {
  const Cx a = std::polar(1.0, q * t) * z1;
  const Cx b = std::polar(1.0, p * t) * z2;
  return {a.real(), a.imag(), b.real(), b.imag()};
}

Polyline Fiber::sample(std::size_t n) const {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "fiber needs at least 3 samples");
  std::vector<double> coords;
  coords.reserve(4 * n);
  const double T = period();
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = at(T * static_cast<double>(i) / static_cast<double>(n));
    coords.insert(coords.end(), x.begin(), x.end());
  }
  return Polyline(4, std::move(coords), true);
}

std::pair<int, int> Fiber::winding_pair(std::size_t n) const {
  const Polyline line = sample(n);
  double turn1 = 0.0, turn2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto a = line.point(i);
    auto b = line.point((i + 1) % n);
    if (z1 != Cx{}) turn1 += std::arg(z_of(b) / z_of(a));
    if (z2 != Cx{}) turn2 += std::arg(w_of(b) / w_of(a));
  }
  const double full = 2.0 * std::numbers::pi;
  return {static_cast<int>(std::lround(turn1 / full)), static_cast<int>(std::lround(turn2 / full))};
}

Cx seifert_chart(int p, int q, Cx z1, Cx z2) { return int_power(z2, q) / int_power(z1, p); }

Fiber fiber(int p, int q, Cx xi) {
  check_pq(p, q);
  if (!is_finite(xi)) throw Error(ErrorCode::SingularFiber, "chart point at infinity lies under the fiber {z1 = 0}");
  const double m = std::abs(xi);
  if (m == 0.0) throw Error(ErrorCode::SingularFiber, "chart origin lies under the fiber {z2 = 0}");
  // r2^q = m (1 - r2^2)^{p/2}; the left side minus the right is increasing in r2.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = std::pow(mid, q) - m * std::pow(1.0 - mid * mid, 0.5 * p);
    (g < 0.0 ? lo : hi) = mid;
  }
  const double r2 = 0.5 * (lo + hi);
  const double r1 = std::sqrt(1.0 - r2 * r2);
  if (r1 == 0.0 || r2 == 0.0) throw Error(ErrorCode::SingularFiber, "chart point too close to a singular fiber");
  return Fiber{p, q, Cx{r1, 0.0}, std::polar(r2, std::arg(xi) / q)};
}

Fiber singular_fiber(int p, int q, Core core) {
  check_pq(p, q);
  return core == Core::Z2Zero ? Fiber{p, q, Cx{1.0, 0.0}, Cx{}} : Fiber{p, q, Cx{}, Cx{1.0, 0.0}};
}

Cx chart_point_for_tube_radius(int p, int q, double eps, double phase) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidArgument, "tube radius must lie in (0, 1)");
  const double m = std::pow(eps, q) / std::pow(1.0 - eps * eps, 0.5 * p);
  return std::polar(m, phase);
}

}  // namespace z2h
