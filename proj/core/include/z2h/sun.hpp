#pragma once

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "z2h/complex.hpp"

namespace z2h {

/// Largest zonal degree accepted (three-term recurrence budget).
inline constexpr int kMaxZonalDegree = 12;

/// Legendre polynomial P_k(t) by the three-term recurrence.
double legendre(int k, double t);

/// rho^k P_k(x3 / rho) at x in R^3. Throws DegreeTooLarge for k > 12.
double zonal(int k, std::span<const double> x);

/// Finite combination sum_k c_k rho^k P_k(cos phi).
struct ZonalPolynomial {
  std::vector<std::pair<int, double>> terms;

  static ZonalPolynomial single(int k, double c = 1.0);
  /// Value at meridian-plane coordinates (s, x3), s = distance to the x3-axis.
  double value(double s, double x3) const;
  /// p * (chi'' + 2 chi' / rho) + 2 chi' d_rho p, using x . grad Z_k = k Z_k.
  double cutoff_laplacian(double s, double x3, double chi1, double chi2) const;
  ZonalPolynomial scaled(double a) const;
  ZonalPolynomial plus(const ZonalPolynomial& other) const;
};

/// Radial cutoff: 0 for rho <= R1, 1 for rho >= R2, smoothstep in between.
class Cutoff {
 public:
  enum class Profile { Quintic, Cubic };

  Cutoff(double r1 = 3.0, double r2 = 5.0, Profile profile = Profile::Quintic);

  double r1() const { return r1_; }
  double r2() const { return r2_; }
  Profile profile() const { return profile_; }
  double value(double rho) const;
  double d1(double rho) const;
  double d2(double rho) const;

 private:
  double r1_, r2_;
  Profile profile_;
};

/// Uniformizing chart of the branched double cover of R^3 along the unit
/// circle in the x3 = 0 plane, reduced by axial symmetry.
///
/// A grid point zeta = xi + i eta maps to the meridian plane by
/// s + i x3 = zeta^2 + 1; zeta and -zeta lie over the same point on opposite
/// sheets (sheet sign = sign Re zeta). Distance to the circle is r = |zeta|^2
/// and the angle around it is theta = 2 arg zeta, so cos(theta/2) r^{1/2} = xi
/// and sin(theta/2) r^{1/2} = eta.
///
/// Cells are centred at -L + (i + 1/2) h with L = sqrt(truncation + 1), so
/// zeta = 0 is a cell corner and the nearest node sits at |zeta| = h / sqrt 2.
class DoubleCoverGrid {
 public:
  enum class Node : unsigned char { Active, Dirichlet, Axis };

  DoubleCoverGrid(int n, double truncation);

  int n() const { return n_; }
  double truncation() const { return truncation_; }
  double half_width() const { return half_width_; }
  double step() const { return step_; }
  double coordinate(int i) const { return -half_width_ + (i + 0.5) * step_; }
  Cx zeta(int i, int j) const { return {coordinate(i), coordinate(j)}; }
  /// Row-major index; row j runs along eta, column i along xi.
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * n_ + i; }
  Node node(int i, int j) const { return nodes_[index(i, j)]; }
  /// Number of unknowns and the unknown id of an active node (-1 otherwise).
  int active_count() const { return active_count_; }
  int unknown(int i, int j) const { return unknowns_[index(i, j)]; }

  /// Smallest distance to the circle resolved by the grid (|zeta| of the
  /// nearest node, squared).
  double r_min() const { return 0.5 * step_ * step_; }

 private:
  friend class PoissonSolver;
  int n_;
  double truncation_;
  double half_width_;
  double step_;
  std::vector<Node> nodes_;
  std::vector<int> unknowns_;
  int active_count_ = 0;
};

double meridian_s(Cx zeta);
double meridian_x3(Cx zeta);
int sheet_of(Cx zeta);

/// Values on the nodes of a grid (NaN at axis nodes).
struct GridField {
  std::shared_ptr<const DoubleCoverGrid> grid;
  std::vector<double> values;

  double at(int i, int j) const { return values[grid->index(i, j)]; }
  /// Tensor-product cubic Lagrange interpolation on the 4x4 surrounding nodes.
  double interpolate(Cx zeta) const;
  GridField operator-(const GridField& other) const;
  GridField operator*(double a) const;
  GridField operator+(const GridField& other) const;
};

/// U = (sheet) chi(rho) p on the double cover.
double sheeted_U(const ZonalPolynomial& p, const Cutoff& chi, Cx zeta);

/// H = Delta U = (sheet) (p Delta chi + 2 grad chi . grad p); zero outside
/// the shell R1 <= rho <= R2.
double source_H(const ZonalPolynomial& p, const Cutoff& chi, Cx zeta);

GridField sample_field(std::shared_ptr<const DoubleCoverGrid> grid, const std::function<double(Cx)>& f);

/// Sparse solver for the axisymmetric Laplacian on the double cover.
///
/// In the zeta chart, div_zeta(s grad_zeta V) = 4 |zeta|^2 s Delta V. Fluxes
/// use s at face midpoints (clamped at 0), faces toward the axis carry no
/// flux, and V = 0 beyond the truncation radius. The operator is regular at
/// zeta = 0, so only solutions bounded there (r^{1/2} and smoother modes)
/// are representable.
class PoissonSolver {
 public:
  explicit PoissonSolver(std::shared_ptr<const DoubleCoverGrid> grid);

  const std::shared_ptr<const DoubleCoverGrid>& grid() const { return grid_; }
  /// Solve Delta V = H. Throws SolverDiverged if the relative residual
  /// exceeds 1e-8.
  GridField solve(const GridField& H) const;
  /// Solve div_zeta(s grad_zeta V) = F directly.
  GridField solve_chart(const GridField& F) const;
  /// Relative residual of the last solve.
  double last_residual() const { return last_residual_; }

 private:
  std::shared_ptr<const DoubleCoverGrid> grid_;
  Eigen::SparseMatrix<double> matrix_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor_;
  mutable double last_residual_ = 0.0;
};

struct LeadingCoefficients {
  double A_plus = 0.0;
  double A_minus = 0.0;

  double norm() const;
};

struct RingProjections {
  std::vector<double> r;
  std::vector<double> cos_part;
  std::vector<double> sin_part;
  std::vector<double> rms;
};

/// (1/2pi) int_0^{4pi} u cos(theta/2) dtheta and the sine counterpart on each
/// ring of radius r, from `samples` equally spaced angles.
RingProjections ring_projections(const std::function<double(Cx)>& u, std::span<const double> radii,
                                 std::size_t samples = 256);

/// Root-mean-square of u over the ring of radius r.
double ring_rms(const std::function<double(Cx)>& u, double r, std::size_t samples = 256);

/// Ring radii log-spaced on [lo_factor * h^2, hi].
std::vector<double> default_rings(const DoubleCoverGrid& grid, double lo_factor = 2.0, double hi = 0.1,
                                  std::size_t count = 16);

/// Least-squares fit of the ring projections against r^{1/2} and r^{3/2};
/// A_plus / A_minus are the r^{1/2} coefficients. Throws FitIllConditioned
/// when the relative fit residual exceeds 0.2 (projections that vanish
/// relative to the ring RMS of u are fitted by zero).
LeadingCoefficients extract_A1(const RingProjections& rings);
LeadingCoefficients extract_A1(const std::function<double(Cx)>& u, std::span<const double> radii);
LeadingCoefficients extract_A1(const GridField& u);

/// Unit vector c minimizing |sum_k c_k A1_k| (right singular vector of the
/// smallest singular value of the 2 x K matrix), largest component positive.
/// Throws NoNullDirection when K < 3.
std::vector<double> null_combination(const std::vector<LeadingCoefficients>& columns);

struct SunParams {
  double r1 = 3.0;
  double r2 = 5.0;
  double truncation = 20.0;
  int grid = 512;
  Cutoff::Profile profile = Cutoff::Profile::Quintic;
};

/// U, H, V and u = U - V for zonal data on one grid (factorization reused
/// across polynomials).
class SunPipeline {
 public:
  explicit SunPipeline(const SunParams& params);

  const SunParams& params() const { return params_; }
  const Cutoff& cutoff() const { return cutoff_; }
  std::shared_ptr<const DoubleCoverGrid> grid() const { return solver_.grid(); }
  const PoissonSolver& solver() const { return solver_; }

  /// The harmonic section u = U - V.
  GridField solve(const ZonalPolynomial& p) const;

 private:
  SunParams params_;
  Cutoff cutoff_;
  PoissonSolver solver_;
};

/// Value at x in R^3 on sheet `sheet` of a gridded section.
double eval_section(const GridField& u, std::span<const double> x, int sheet);

/// Exact test solution odd across the sheets and its image under
/// div(s grad .); both negligible near the axis and the truncation boundary.
double manufactured_solution(Cx zeta);
double manufactured_operator(Cx zeta);

struct ManufacturedStudy {
  std::vector<int> grids;
  std::vector<double> max_errors;
  /// Observed order between consecutive grids.
  std::vector<double> orders;
};

ManufacturedStudy manufactured_convergence(const std::vector<int>& grids, double truncation);

/// Throws GridTooCoarse when the manufactured solution is reproduced with
/// max error above `tolerance` on an n x n grid.
void require_resolved(int n, double truncation, double tolerance);

}  // namespace z2h
