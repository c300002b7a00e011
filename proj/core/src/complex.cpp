#include "z2h/complex.hpp"

#include <cmath>

#include "z2h/error.hpp"

namespace z2h {

bool is_finite(Cx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

Cx principal_sqrt(Cx v) {
  if (v.imag() == 0.0) {
    if (v.real() < 0.0) return {0.0, std::sqrt(-v.real())};
    return {std::sqrt(v.real()), 0.0};
  }
  return std::sqrt(v);
}

Cx int_power(Cx s, int n) {
  Cx base = n < 0 ? 1.0 / s : s;
  unsigned m = static_cast<unsigned>(n < 0 ? -n : n);
  Cx out = 1.0;
  while (m) {
    if (m & 1u) out *= base;
    base *= base;
    m >>= 1u;
  }
  return out;
}

Cx principal_half_power(Cx v, HalfPower k) {
  if (!is_finite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite base");
  if (std::abs(v) < kZeroBase) throw Error(ErrorCode::ZeroBase, "half power of zero");
  return int_power(principal_sqrt(v), static_cast<int>(2 * k.k + 1));
}

}  // namespace z2h
