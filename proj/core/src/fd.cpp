#include "z2h/fd.hpp"

#include <cmath>

#include "z2h/error.hpp"

namespace z2h {

double fd_laplacian(const ScalarField& f, std::span<const double> x, double step) {
  std::vector<double> y(x.begin(), x.end());
  const double centre = f(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = x[i] + step;
    const double plus = f(y);
    y[i] = x[i] - step;
    const double minus = f(y);
    y[i] = x[i];
    acc += plus - 2.0 * centre + minus;
  }
  return acc / (step * step);
}

std::vector<double> fd_gradient(const ScalarField& f, std::span<const double> x, double step) {
  std::vector<double> y(x.begin(), x.end()), g(x.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = x[i] + step;
    const double plus = f(y);
    y[i] = x[i] - step;
    const double minus = f(y);
    y[i] = x[i];
    g[i] = (plus - minus) / (2.0 * step);
  }
  return g;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::InvalidArgument, "line fit needs >= 2 matched samples");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InvalidArgument, "line fit abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

LineFit loglog_fit(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "log-log fit needs positive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return fit_line(lx, ly);
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo)) throw Error(ErrorCode::InvalidArgument, "bad logspace range");
  std::vector<double> out(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

double observed_order(double coarse_error, double fine_error) { return std::log2(coarse_error / fine_error); }

}  // namespace z2h
