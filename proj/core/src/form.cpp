#include "z2h/form.hpp"

#include <cmath>

#include "z2h/error.hpp"

namespace z2h {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Re(A dz) in coordinates (dx, dy) with dz = dx + i dy.
void push_re_dz(std::vector<double>& out, Cx a) {
  out.push_back(a.real());
  out.push_back(-a.imag());
}

Cx axial_w(std::span<const double> x) { return {x[0], x[1]}; }

void check_state(const ComplexField& field, const BranchState& s, ErrorCode on_locus) {
  if (std::abs(s.h_value) < kBranchLocusEps) throw Error(on_locus, "point lies on the branching locus");
  const Cx actual = field(s.at);
  if (std::abs(actual - s.h_value) > 1e-8 * (1.0 + std::abs(actual)))
    throw Error(ErrorCode::InvalidArgument, "branch state does not belong to this form at its point");
}

bool degree_at_most_one(const DefiningFunction& p) {
  const auto& c = std::get<UnivariatePolynomial>(p.params()).coeffs;
  for (std::size_t k = 2; k < c.size(); ++k)
    if (c[k] != Cx{}) return false;
  return true;
}

// Re of an antiderivative of sqrt(p) dz for deg p <= 1, given s = sqrt(p(z)).
double planar_potential(const DefiningFunction& p, Cx z, Cx s) {
  const auto& c = std::get<UnivariatePolynomial>(p.params()).coeffs;
  const Cx c1 = c.size() > 1 ? c[1] : Cx{};
  if (c1 == Cx{}) return (s * z).real();
  return (2.0 / (3.0 * c1) * s * s * s).real();
}

}  // namespace

double Covector::norm() const {
  double acc = 0.0;
  for (double v : c) acc += v * v;
  return std::sqrt(acc);
}

Z2Form Z2Form::re_h_power(DefiningFunction h, HalfPower k) { return Z2Form(ReHPower{std::move(h), k}); }

Z2Form Z2Form::planar(DefiningFunction p) {
  if (!p.is_univariate()) throw Error(ErrorCode::InvalidArgument, "planar form needs a univariate polynomial");
  return Z2Form(PlanarSqrt{std::move(p)});
}

Z2Form Z2Form::axial(HalfPower k) { return Z2Form(AxialProduct{k}); }

Z2Form Z2Form::quadratic_differential(DefiningFunction q) {
  if (!q.is_univariate()) throw Error(ErrorCode::InvalidArgument, "quadratic differential needs a univariate polynomial");
  return Z2Form(QuadraticDifferentialSqrt{std::move(q)});
}

Z2Form Z2Form::pullback(SmoothMap map, Z2Form base) {
  if (map.target_dim() != base.dimension())
    throw Error(ErrorCode::InvalidArgument, "map target dimension does not match the base form");
  return Z2Form(Pullback{std::move(map), std::make_shared<const Z2Form>(std::move(base))});
}

int Z2Form::dimension() const {
  return std::visit(Overloaded{
                        [](const ReHPower& r) { return r.h.domain_dim(); },
                        [](const PlanarSqrt&) { return 2; },
                        [](const AxialProduct&) { return 3; },
                        [](const QuadraticDifferentialSqrt&) { return 2; },
                        [](const Pullback& p) { return p.map.source_dim(); },
                    },
                    construction_);
}

ComplexField Z2Form::branch_field() const {
  return std::visit(Overloaded{
                        [](const ReHPower& r) { return r.h.field(); },
                        [](const PlanarSqrt& p) { return p.p.field(); },
                        [](const AxialProduct&) -> ComplexField {
                          return [](std::span<const double> x) { return axial_w(x); };
                        },
                        [](const QuadraticDifferentialSqrt& q) { return q.q.field(); },
                        [](const Pullback& p) -> ComplexField {
                          return [map = p.map, base = p.base->branch_field()](std::span<const double> x) {
                            return base(map(x));
                          };
                        },
                    },
                    construction_);
}

BranchState Z2Form::principal_state(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension()) throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
  return z2h::principal_state(branch_field(), x);
}

BranchState Z2Form::continue_to(const BranchState& from, std::span<const double> to) const {
  return z2h::continue_to(branch_field(), from, to);
}

bool Z2Form::has_potential() const {
  return std::visit(Overloaded{
                        [](const ReHPower&) { return true; },
                        [](const PlanarSqrt& p) { return degree_at_most_one(p.p); },
                        [](const AxialProduct&) { return true; },
                        [](const QuadraticDifferentialSqrt& q) { return degree_at_most_one(q.q); },
                        [](const Pullback& p) { return p.base->has_potential(); },
                    },
                    construction_);
}

double Z2Form::eval_f(const BranchState& state) const {
  const bool is_pullback = std::holds_alternative<Pullback>(construction_);
  check_state(branch_field(), state, is_pullback ? ErrorCode::ImageOnBranchLocus : ErrorCode::OnBranchLocus);
  const Cx s = state.sqrt_value;
  return std::visit(
      Overloaded{
          [&](const ReHPower& r) { return int_power(s, static_cast<int>(2 * r.k.k + 1)).real(); },
          [&](const PlanarSqrt& p) {
            if (!has_potential()) throw Error(ErrorCode::InvalidArgument, "planar form has no closed-form potential");
            return planar_potential(p.p, z_of(state.at), s);
          },
          [&](const AxialProduct& a) {
            return 2.0 * state.at[2] * int_power(s, static_cast<int>(2 * a.k.k + 1)).real();
          },
          [&](const QuadraticDifferentialSqrt& q) {
            if (!has_potential()) throw Error(ErrorCode::InvalidArgument, "quadratic differential has no closed-form potential");
            return planar_potential(q.q, z_of(state.at), s);
          },
          [&](const Pullback& p) {
            BranchState image = state;
            image.at = p.map(state.at);
            return p.base->eval_f(image);
          },
      },
      construction_);
}

Covector Z2Form::eval_omega(const BranchState& state) const {
  const bool is_pullback = std::holds_alternative<Pullback>(construction_);
  check_state(branch_field(), state, is_pullback ? ErrorCode::ImageOnBranchLocus : ErrorCode::OnBranchLocus);
  const Cx s = state.sqrt_value;
  return std::visit(
      Overloaded{
          [&](const ReHPower& r) {
            const int kk = static_cast<int>(r.k.k);
            const Cx lead = r.k.exponent() * int_power(s, 2 * kk - 1);
            std::vector<double> out;
            if (r.h.is_univariate()) {
              push_re_dz(out, lead * r.h.dz(z_of(state.at), Cx{}));
            } else {
              const Cx z = z_of(state.at), w = w_of(state.at);
              push_re_dz(out, lead * r.h.dz(z, w));
              push_re_dz(out, lead * r.h.dw(z, w));
            }
            return Covector{std::move(out)};
          },
          [&](const PlanarSqrt&) {
            std::vector<double> out;
            push_re_dz(out, s);
            return Covector{std::move(out)};
          },
          [&](const AxialProduct& a) {
            const int kk = static_cast<int>(a.k.k);
            const double z = state.at[2];
            const Cx low = (2.0 * kk + 1.0) * z * int_power(s, 2 * kk - 1);
            std::vector<double> out;
            push_re_dz(out, low);
            out.push_back(2.0 * int_power(s, 2 * kk + 1).real());
            return Covector{std::move(out)};
          },
          [&](const QuadraticDifferentialSqrt&) {
            std::vector<double> out;
            push_re_dz(out, s);
            return Covector{std::move(out)};
          },
          [&](const Pullback& p) {
            BranchState image = state;
            image.at = p.map(state.at);
            const Covector base = p.base->eval_omega(image);
            const Eigen::MatrixXd j = p.map.jacobian(state.at);
            Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(base.c.data(), static_cast<Eigen::Index>(base.c.size()));
            Eigen::VectorXd out = j.transpose() * v;
            return Covector{std::vector<double>(out.data(), out.data() + out.size())};
          },
      },
      construction_);
}

std::function<double(std::span<const double>)> Z2Form::local_potential(const BranchState& anchor) const {
  return [self = *this, anchor, field = branch_field()](std::span<const double> x) {
    return self.eval_f(z2h::continue_to(field, anchor, x));
  };
}

std::function<Covector(std::span<const double>)> Z2Form::local_omega(const BranchState& anchor) const {
  return [self = *this, anchor, field = branch_field()](std::span<const double> x) {
    return self.eval_omega(z2h::continue_to(field, anchor, x));
  };
}

Covector eval_r3_form(double z_coord, Cx w, int sign) {
  if (std::abs(w) < kBranchLocusEps) throw Error(ErrorCode::OnBranchLocus, "w = 0 lies on the z-axis");
  const Z2Form form = Z2Form::axial();
  const std::vector<double> x{w.real(), w.imag(), z_coord};
  const BranchState state = state_with_sign(form.branch_field(), x, sign);
  return form.eval_omega(state);
}

Covector eval_planar(const DefiningFunction& p, const BranchState& state) {
  return Z2Form::planar(p).eval_omega(state);
}

Z2Form family_nodal(Cx a, Cx b, Cx c) { return Z2Form::re_h_power(DefiningFunction::node(a, b, c)); }

}  // namespace z2h
