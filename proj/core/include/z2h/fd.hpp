#pragma once

#include <functional>
#include <span>
#include <vector>

namespace z2h {

using ScalarField = std::function<double(std::span<const double>)>;

/// (2n+1)-point Laplacian sum_i (f(x + h e_i) - 2 f(x) + f(x - h e_i)) / h^2.
double fd_laplacian(const ScalarField& f, std::span<const double> x, double step);

/// Central-difference gradient.
std::vector<double> fd_gradient(const ScalarField& f, std::span<const double> x, double step);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the fit.
  double rms_residual = 0.0;
};

/// Least squares y = slope * x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least squares of log y against log x. Every value must be positive.
LineFit loglog_fit(std::span<const double> x, std::span<const double> y);

/// n log-spaced values from lo to hi inclusive.
std::vector<double> logspace(double lo, double hi, std::size_t n);

/// Observed order log2(coarse / fine) for a step ratio of 2.
double observed_order(double coarse_error, double fine_error);

}  // namespace z2h
