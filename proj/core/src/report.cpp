#include "z2h/report.hpp"

#include <cmath>

#include "z2h/error.hpp"

namespace z2h {

Tolerances::Tolerances()
    : values_{
          {"harmonic_ratio_lo", 3.4},   {"harmonic_ratio_hi", 4.6}, {"gradient_rel", 1e-4},
          {"slope_tol", 0.05},          {"hausdorff", 1e-9},        {"homogeneity", 1e-8},
          {"linking_hopf", 0.05},       {"linking_seifert", 0.1},   {"lb_order_min", 1.8},
          {"cross_oracle_rel", 1e-6},   {"mms_order_min", 1.8},     {"linearity_rel", 1e-4},
          {"resolution_rel", 0.02},     {"truncation_rel", 0.02},   {"null_reduction", 10.0},
          {"decay_slope_min", 1.4},     {"friedrichs_ratio", 1.5},  {"axisymmetry", 1e-10},
          {"fiber_invariance", 1e-10},  {"parity_rel", 1e-6},
      } {}

double Tolerances::get(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) throw Error(ErrorCode::InvalidArgument, "unknown tolerance " + name);
  return it->second;
}

void Tolerances::set(const std::string& name, double value) {
  if (!values_.contains(name)) throw Error(ErrorCode::SchemaError, "--tol: unknown tolerance \"" + name + "\"");
  if (!std::isfinite(value)) throw Error(ErrorCode::SchemaError, "--tol: tolerance " + name + " must be finite");
  values_[name] = value;
}

void Tolerances::apply(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw Error(ErrorCode::SchemaError, "--tol: expected name=value, got \"" + assignment + "\"");
  const std::string name = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorCode::SchemaError, "--tol: bad value \"" + text + "\" for " + name);
  set(name, value);
}

bool Report::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string Report::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return c.name;
  return {};
}

nlohmann::json Report::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks)
    list.push_back({{"name", c.name}, {"points", c.points}, {"stats", c.stats}, {"pass", c.pass}, {"tolerances", c.tolerances}});
  return {{"construction", construction}, {"suite", suite}, {"seed", seed}, {"checks", list}, {"pass", pass()}};
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

}  // namespace z2h
