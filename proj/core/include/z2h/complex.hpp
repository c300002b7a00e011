#pragma once

#include <complex>
#include <span>

namespace z2h {

using Cx = std::complex<double>;

/// Below this modulus a base is treated as zero by the half-power routines.
inline constexpr double kZeroBase = 1e-300;

/// Exponent (2k+1)/2 of a half-integer power.
struct HalfPower {
  unsigned k = 1;

  double exponent() const { return (2.0 * k + 1.0) / 2.0; }
  friend bool operator==(HalfPower, HalfPower) = default;
};

bool is_finite(Cx v);

/// Principal square root with argument of the base taken in (-pi, pi]; a
/// negative real base with a negative-zero imaginary part maps to +i sqrt|v|.
Cx principal_sqrt(Cx v);

/// v^{(2k+1)/2} = principal_sqrt(v)^{2k+1}. Throws ZeroBase for |v| < 1e-300.
Cx principal_half_power(Cx v, HalfPower k);

/// s^n for integer n (negative allowed), by repeated multiplication.
Cx int_power(Cx s, int n);

/// Coordinates (Re z, Im z, Re w, Im w) <-> (z, w).
inline Cx z_of(std::span<const double> x) { return {x[0], x[1]}; }
inline Cx w_of(std::span<const double> x) { return {x[2], x[3]}; }

}  // namespace z2h
