// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "z2h/descriptor.hpp"
#include "z2h/error.hpp"
#include "z2h/verify.hpp"

using nlohmann::json;

namespace {

constexpr std::uint64_t kSeed = 20240611;

z2h::Tolerances pinned() {
  z2h::Tolerances t;
  t.set("harmonic_ratio_lo", 3.4);
  t.set("harmonic_ratio_hi", 4.6);
  t.set("gradient_rel", 1e-4);
  t.set("slope_tol", 0.05);
  t.set("hausdorff", 1e-9);
  t.set("homogeneity", 1e-8);
  t.set("linking_hopf", 0.05);
  t.set("linking_seifert", 0.1);
  t.set("lb_order_min", 1.8);
  t.set("cross_oracle_rel", 1e-6);
  t.set("mms_order_min", 1.8);
  t.set("linearity_rel", 1e-4);
  t.set("resolution_rel", 0.02);
  t.set("truncation_rel", 0.02);
  t.set("null_reduction", 10.0);
  t.set("decay_slope_min", 1.4);
  return t;
}

z2h::Report run(const std::string& spec, const std::string& suite) {
  z2h::VerifyOptions opt;
  opt.suite = suite;
  opt.seed = kSeed;
  opt.tol = pinned();
  return z2h::verify(z2h::Descriptor::parse(json::parse(spec)), opt);
}

const z2h::Check* find(const z2h::Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

struct Tally {
  bool pass = true;
  std::vector<std::string> notes;

  void require(const z2h::Report& r, const std::string& name, const std::string& label) {
    const z2h::Check* c = find(r, name);
    if (!c || !c->pass) {
      pass = false;
      notes.push_back(label + " " + name + (c ? " failed" : " missing"));
    }
  }
};

const std::vector<std::string> kHarmonicForms{
    R"({"kind":"node","a":0,"b":0,"c":0})", R"({"kind":"node","a":1,"b":0,"c":0})",
    R"({"kind":"lines","lines":[[1,0],[0,1],[1,1]]})", R"({"kind":"ramified","a":1})", R"({"kind":"r3"})",
    R"({"kind":"planar","p":[[-0.3,0.2],1]})"};

Tally criterion1() {
  Tally t;
  for (const auto& s : kHarmonicForms) t.require(run(s, "harmonicity"), "harmonicity", s);
  return t;
}

Tally criterion2() {
  Tally t;
  for (const auto& s : kHarmonicForms) t.require(run(s, "harmonicity"), "gradient_consistency", s);
  return t;
}

Tally criterion3() {
  Tally t;
  const std::vector<std::pair<std::string, int>> cases{
      {R"({"kind":"node","a":0,"b":0,"c":0})", -1},
      {R"({"kind":"ramified","a":1})", -1},
      {R"({"kind":"planar","p":[[-0.3,0.2],1]})", -1},
      {R"({"kind":"bivariate","coeffs":[[0,0,0],[0,0,0],[0,0,1]]})", 1}};
  for (const auto& [s, sign] : cases) {
    const auto r = run(s, "monodromy");
    t.require(r, "monodromy", s);
    const z2h::Check* c = find(r, "monodromy");
    if (!c) continue;
    for (const auto& loop : c->stats["loops"])
      if (loop["sign"] != sign) {
        t.pass = false;
        t.notes.push_back(s + " loop " + loop["loop"].get<std::string>() + " has the wrong sign");
      }
  }
  return t;
}

Tally criterion4() {
  Tally t;
  std::vector<std::string> forms = kHarmonicForms;
  forms.push_back(R"({"kind":"hopf_pullback"})");
  for (const auto& s : forms) t.require(run(s, "vanishing-order"), "vanishing_order", s);
  return t;
}

Tally criterion5() {
  Tally t;
  const auto r = run(R"({"kind":"lines","lines":[[1,0],[0,1],[1,1]]})", "topology");
  t.require(r, "tangent_cone", "lines");
  t.require(r, "homogeneity", "lines");
  return t;
}

Tally criterion6() {
  Tally t;
  const std::vector<std::pair<std::string, std::string>> cases{{R"({"kind":"seifert","p":1,"q":1})", "hopf_linking"},
                                                               {R"({"kind":"seifert","p":2,"q":3})", "seifert_linking"},
                                                               {R"({"kind":"seifert","p":3,"q":2})", "seifert_linking"}};
  for (const auto& [s, linking] : cases) {
    const auto r = run(s, "topology");
    t.require(r, linking, s);
    t.require(r, "covering_degree", s);
    t.require(r, "winding_pair", s);
  }
  return t;
}

Tally criterion7() {
  Tally t;
  const auto r = run(R"({"kind":"hopf_pullback"})", "harmonicity");
  t.require(r, "harmonic_morphism", "hopf_pullback");
  t.require(r, "lb_cross_oracle", "hopf_pullback");
  return t;
}

Tally criterion8() {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  const auto r = run(R"({"kind":"sun","degrees":[0,1,2,3,4],"grid":512})", "sun");
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const char* name : {"mms_order", "A1_linearity", "A1_resolution", "A1_truncation", "null_reduction", "null_decay"})
    t.require(r, name, "sun");
  std::ostringstream ss;
  ss << "runtime " << seconds << " s";
  t.notes.push_back(ss.str());
  if (seconds > 300.0) {
    t.pass = false;
    t.notes.push_back("over the 5 minute budget");
  }
  return t;
}

Tally criterion9() {
  Tally t;
  const std::vector<std::pair<std::string, std::string>> cases{{R"({"kind":"ramified","a":1})", "harmonicity"},
                                                               {R"({"kind":"node","a":1,"b":0,"c":0})", "monodromy"},
                                                               {R"({"kind":"ramified","a":1})", "vanishing-order"},
                                                               {R"({"kind":"hopf_pullback"})", "harmonicity"},
                                                               {R"({"kind":"seifert","p":2,"q":3})", "topology"}};
  for (const auto& [s, suite] : cases)
    if (run(s, suite).dump() != run(s, suite).dump()) {
      t.pass = false;
      t.notes.push_back(s + " " + suite + " differs between runs");
    }
  return t;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Tally()>>> criteria{
      {"harmonicity Richardson ratio in [3.4, 4.6]", criterion1},
      {"gradient consistency <= 1e-4", criterion2},
      {"monodromy signs, refinement stability, winding oracle", criterion3},
      {"vanishing-order slopes within 0.05", criterion4},
      {"tangent cone Hausdorff <= 1e-9 and homogeneity <= 1e-8", criterion5},
      {"linking, covering degree and winding pairs", criterion6},
      {"harmonic morphism order 2 and Laplace-Beltrami cross-oracle", criterion7},
      {"Sun pipeline at 512^2", criterion8},
      {"byte-identical reports for equal seeds", criterion9}};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Tally t;
    try {
      t = criteria[i].second();
    } catch (const z2h::Error& e) {
      t.pass = false;
      t.notes.push_back(e.what());
    }
    all = all && t.pass;
    std::cout << "criterion " << i + 1 << ": " << (t.pass ? "PASS" : "FAIL") << " (" << criteria[i].first << ")";
    for (const auto& n : t.notes) std::cout << "; " << n;
    std::cout << std::endl;
  }
  return all ? 0 : 1;
}
