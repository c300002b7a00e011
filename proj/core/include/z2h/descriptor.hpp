#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "z2h/defining_function.hpp"
#include "z2h/form.hpp"
#include "z2h/sun.hpp"

namespace z2h {

/// Construction descriptors accepted by the command-line tool.
///
/// JSON shapes (complex numbers are a number or [re, im]; defaults in
/// parentheses are filled in by to_json):
///   {"kind": "node", "a", "b", "c", "k" (1)}
///   {"kind": "lines", "lines": [[a, b], ...], "k" (1)}
///   {"kind": "ramified", "a" (1), "k" (1)}
///   {"kind": "bivariate", "coeffs": [[c_00, c_01, ...], ...], "k" (1)}   c_ij multiplies z^i w^j
///   {"kind": "planar", "p": [p_0, p_1, ...]}
///   {"kind": "quadratic", "q": [q_0, q_1, ...]}
///   {"kind": "r3", "k" (1)}
///   {"kind": "hopf_pullback", "p" ([0, 1])}                base polynomial in xi = w / z
///   {"kind": "seifert", "p", "q", "a" (1)}                 "a": chart point of the exported fiber
///   {"kind": "sun", "degrees" ([0..4]), "R1" (3), "R2" (5), "truncation" (20),
///    "grid" (512), "cutoff" ("quintic")}
struct ReHPowerSpec {
  DefiningFunction h;
  HalfPower k;
};
struct PlanarSpec {
  std::vector<Cx> p;
  bool quadratic = false;
};
struct R3Spec {
  HalfPower k;
};
struct HopfPullbackSpec {
  std::vector<Cx> p;
};
struct SeifertSpec {
  int p = 1;
  int q = 1;
  Cx a{1.0, 0.0};
};
struct SunSpec {
  std::vector<int> degrees{0, 1, 2, 3, 4};
  SunParams params;
};

class Descriptor {
 public:
  using Body = std::variant<ReHPowerSpec, PlanarSpec, R3Spec, HopfPullbackSpec, SeifertSpec, SunSpec>;

  /// Throws SchemaError naming the JSON pointer of the offending field.
  static Descriptor parse(const nlohmann::json& spec);

  const std::string& kind() const { return kind_; }
  const Body& body() const { return body_; }
  /// Canonical JSON with every default filled in; parse(to_json()) is a fixed point.
  nlohmann::json to_json() const;

  /// The form described (not available for seifert and sun).
  Z2Form form() const;

 private:
  Descriptor(std::string kind, Body body) : kind_(std::move(kind)), body_(std::move(body)) {}
  std::string kind_;
  Body body_;
};

nlohmann::json complex_to_json(Cx v);

}  // namespace z2h
