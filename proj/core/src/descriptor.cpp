#include "z2h/descriptor.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "z2h/error.hpp"

namespace z2h {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, (path.empty() ? std::string("/") : path) + ": " + what);
}

const json& field(const json& obj, const std::string& path, const char* name) {
  if (!obj.contains(name)) fail(path + "/" + name, "missing required field");
  return obj.at(name);
}

double real_value(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "expected a finite number");
  return d;
}

Cx complex_value(const json& v, const std::string& path) {
  if (v.is_number()) return {real_value(v, path), 0.0};
  if (v.is_array() && v.size() == 2) return {real_value(v[0], path + "/0"), real_value(v[1], path + "/1")};
  fail(path, "expected a number or [re, im]");
}

int int_value(const json& v, const std::string& path, int lo, int hi) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  const auto i = v.get<long long>();
  if (i < lo || i > hi) fail(path, "integer out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(i);
}

std::vector<Cx> complex_list(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array");
  std::vector<Cx> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(complex_value(v[i], path + "/" + std::to_string(i)));
  return out;
}

Cx complex_or(const json& obj, const char* name, Cx fallback) {
  return obj.contains(name) ? complex_value(obj.at(name), std::string("/") + name) : fallback;
}

HalfPower half_power(const json& obj) {
  return HalfPower{static_cast<unsigned>(obj.contains("k") ? int_value(obj.at("k"), "/k", 0, 8) : 1)};
}

double real_or(const json& obj, const char* name, double fallback) {
  return obj.contains(name) ? real_value(obj.at(name), std::string("/") + name) : fallback;
}

void check_keys(const json& obj, std::set<std::string> allowed) {
  allowed.insert("kind");
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key)) fail("/" + key, "unknown field");
}

json list_to_json(const std::vector<Cx>& v) {
  json out = json::array();
  for (Cx c : v) out.push_back(complex_to_json(c));
  return out;
}

std::string cutoff_name(Cutoff::Profile p) { return p == Cutoff::Profile::Cubic ? "cubic" : "quintic"; }

}  // namespace

json complex_to_json(Cx v) { return json::array({v.real(), v.imag()}); }

Descriptor Descriptor::parse(const json& spec) {
  if (!spec.is_object()) fail("", "descriptor must be a JSON object");
  const json& kind_json = field(spec, "", "kind");
  if (!kind_json.is_string()) fail("/kind", "expected a string");
  const std::string kind = kind_json.get<std::string>();
  try {
    if (kind == "node") {
      check_keys(spec, {"a", "b", "c", "k"});
      const Cx a = complex_value(field(spec, "", "a"), "/a");
      const Cx b = complex_value(field(spec, "", "b"), "/b");
      const Cx c = complex_value(field(spec, "", "c"), "/c");
      return Descriptor(kind, ReHPowerSpec{DefiningFunction::node(a, b, c), half_power(spec)});
    }
    if (kind == "lines") {
      check_keys(spec, {"lines", "k"});
      const json& lines = field(spec, "", "lines");
      if (!lines.is_array() || lines.empty()) fail("/lines", "expected a non-empty array");
      std::vector<std::pair<Cx, Cx>> pairs;
      for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string p = "/lines/" + std::to_string(i);
        if (!lines[i].is_array() || lines[i].size() != 2) fail(p, "expected [a, b]");
        pairs.emplace_back(complex_value(lines[i][0], p + "/0"), complex_value(lines[i][1], p + "/1"));
        if (pairs.back().first == Cx{} && pairs.back().second == Cx{}) fail(p, "line coefficients (0, 0)");
      }
      return Descriptor(kind, ReHPowerSpec{DefiningFunction::product_of_lines(std::move(pairs)), half_power(spec)});
    }
    if (kind == "ramified") {
      check_keys(spec, {"a", "k"});
      return Descriptor(kind, ReHPowerSpec{DefiningFunction::ramified_cover(complex_or(spec, "a", 1.0)), half_power(spec)});
    }
    if (kind == "bivariate") {
      check_keys(spec, {"coeffs", "k"});
      const json& rows = field(spec, "", "coeffs");
      if (!rows.is_array() || rows.empty()) fail("/coeffs", "expected a non-empty array of rows");
      std::vector<std::vector<Cx>> table;
      for (std::size_t i = 0; i < rows.size(); ++i) table.push_back(complex_list(rows[i], "/coeffs/" + std::to_string(i)));
      return Descriptor(kind, ReHPowerSpec{DefiningFunction::bivariate(std::move(table)), half_power(spec)});
    }
    if (kind == "planar" || kind == "quadratic") {
      const char* name = kind == "planar" ? "p" : "q";
      check_keys(spec, {name});
      auto coeffs = complex_list(field(spec, "", name), std::string("/") + name);
      DefiningFunction::univariate(coeffs);
      return Descriptor(kind, PlanarSpec{std::move(coeffs), kind == "quadratic"});
    }
    if (kind == "r3") {
      check_keys(spec, {"k"});
      return Descriptor(kind, R3Spec{half_power(spec)});
    }
    if (kind == "hopf_pullback") {
      check_keys(spec, {"p"});
      std::vector<Cx> p{0.0, 1.0};
      if (spec.contains("p")) p = complex_list(spec.at("p"), "/p");
      DefiningFunction::univariate(p);
      return Descriptor(kind, HopfPullbackSpec{std::move(p)});
    }
    if (kind == "seifert") {
      check_keys(spec, {"p", "q", "a"});
      SeifertSpec s{int_value(field(spec, "", "p"), "/p", 1, 64), int_value(field(spec, "", "q"), "/q", 1, 64),
                    complex_or(spec, "a", 1.0)};
      if (std::gcd(s.p, s.q) != 1) fail("/q", "p and q must be coprime");
      if (s.a == Cx{}) fail("/a", "chart point 0 lies under a singular fiber");
      return Descriptor(kind, s);
    }
    if (kind == "sun") {
      check_keys(spec, {"degrees", "R1", "R2", "truncation", "grid", "cutoff"});
      SunSpec s;
      if (spec.contains("degrees")) {
        const json& d = spec.at("degrees");
        if (!d.is_array() || d.empty()) fail("/degrees", "expected a non-empty array");
        s.degrees.clear();
        for (std::size_t i = 0; i < d.size(); ++i)
          s.degrees.push_back(int_value(d[i], "/degrees/" + std::to_string(i), 0, kMaxZonalDegree));
      }
      s.params.r1 = real_or(spec, "R1", s.params.r1);
      s.params.r2 = real_or(spec, "R2", s.params.r2);
      s.params.truncation = real_or(spec, "truncation", s.params.truncation);
      if (spec.contains("grid")) s.params.grid = int_value(spec.at("grid"), "/grid", 8, 8192);
      if (s.params.grid % 2 != 0) fail("/grid", "grid size must be even");
      if (!(s.params.r1 > 1.0 && s.params.r2 > s.params.r1)) fail("/R2", "need 1 < R1 < R2");
      if (!(s.params.truncation >= s.params.r2)) fail("/truncation", "truncation radius must be at least R2");
      if (spec.contains("cutoff")) {
        const json& c = spec.at("cutoff");
        if (c == "quintic")
          s.params.profile = Cutoff::Profile::Quintic;
        else if (c == "cubic")
          s.params.profile = Cutoff::Profile::Cubic;
        else
          fail("/cutoff", "expected \"quintic\" or \"cubic\"");
      }
      return Descriptor(kind, s);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    fail("", e.what());
  }
  fail("/kind", "unknown kind \"" + kind + "\"");
}

json Descriptor::to_json() const {
  json out{{"kind", kind_}};
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ReHPowerSpec>) {
          out["k"] = b.k.k;
          std::visit(
              [&](const auto& p) {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, Node>) {
                  out["a"] = complex_to_json(p.a);
                  out["b"] = complex_to_json(p.b);
                  out["c"] = complex_to_json(p.c);
                } else if constexpr (std::is_same_v<P, ProductOfLines>) {
                  out["lines"] = json::array();
                  for (const auto& [a, bb] : p.lines) out["lines"].push_back({complex_to_json(a), complex_to_json(bb)});
                } else if constexpr (std::is_same_v<P, RamifiedCover>) {
                  out["a"] = complex_to_json(p.a);
                } else if constexpr (std::is_same_v<P, BivariatePolynomial>) {
                  out["coeffs"] = json::array();
                  for (const auto& row : p.coeffs) out["coeffs"].push_back(list_to_json(row));
                }
              },
              b.h.params());
        } else if constexpr (std::is_same_v<T, PlanarSpec>) {
          out[b.quadratic ? "q" : "p"] = list_to_json(b.p);
        } else if constexpr (std::is_same_v<T, R3Spec>) {
          out["k"] = b.k.k;
        } else if constexpr (std::is_same_v<T, HopfPullbackSpec>) {
          out["p"] = list_to_json(b.p);
        } else if constexpr (std::is_same_v<T, SeifertSpec>) {
          out["p"] = b.p;
          out["q"] = b.q;
          out["a"] = complex_to_json(b.a);
        } else if constexpr (std::is_same_v<T, SunSpec>) {
          out["degrees"] = b.degrees;
          out["R1"] = b.params.r1;
          out["R2"] = b.params.r2;
          out["truncation"] = b.params.truncation;
          out["grid"] = b.params.grid;
          out["cutoff"] = cutoff_name(b.params.profile);
        }
      },
      body_);
  return out;
}

Z2Form Descriptor::form() const {
  if (const auto* r = std::get_if<ReHPowerSpec>(&body_)) return Z2Form::re_h_power(r->h, r->k);
  if (const auto* p = std::get_if<PlanarSpec>(&body_)) {
    const auto poly = DefiningFunction::univariate(p->p);
    return p->quadratic ? Z2Form::quadratic_differential(poly) : Z2Form::planar(poly);
  }
  if (const auto* r = std::get_if<R3Spec>(&body_)) return Z2Form::axial(r->k);
  if (const auto* h = std::get_if<HopfPullbackSpec>(&body_))
    return Z2Form::pullback(hopf_to_plane(), Z2Form::planar(DefiningFunction::univariate(h->p)));
  throw Error(ErrorCode::SchemaError, "/kind: \"" + kind_ + "\" does not describe a form");
}

}  // namespace z2h
