#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <sys/wait.h>

#include "z2h/defining_function.hpp"
#include "z2h/polyline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "z2h_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path spec_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / (name + ".json");
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const std::string cmd = std::string(Z2H_TOOL) + " " + args + " > " + out.string() + " 2> " + (scratch() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

}  // namespace

TEST(Cli, ConstructEchoesDefaults) {
  const auto r = run("construct --spec " + spec_file("node", R"({"kind":"node","a":0,"b":0,"c":0})").string());
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["kind"], "node");
  EXPECT_EQ(j["k"], 1);
  EXPECT_EQ(j["a"], json::array({0.0, 0.0}));
}

TEST(Cli, ConstructOutputReingestsToItself) {
  const auto first = run("construct --spec " + spec_file("lines", R"({"kind":"lines","lines":[[1,0],[0,1],[1,1]]})").string());
  ASSERT_EQ(first.code, 0);
  const auto second = run("construct --spec " + spec_file("lines_canonical", first.out).string());
  ASSERT_EQ(second.code, 0);
  EXPECT_EQ(first.out, second.out);
}

TEST(Cli, SchemaErrorExitsWithTwo) {
  EXPECT_EQ(run("construct --spec " + spec_file("bad", R"({"kind":"node","a":0})").string()).code, 2);
  EXPECT_EQ(run("construct --spec " + (scratch() / "missing.json").string()).code, 2);
  EXPECT_EQ(run("verify --suite sun --spec " + spec_file("planar", R"({"kind":"planar","p":[-0.3,1]})").string()).code, 2);
  EXPECT_EQ(run("verify --suite nonsense --spec " + spec_file("planar", R"({"kind":"planar","p":[-0.3,1]})").string()).code, 2);
}

TEST(Cli, MonodromyReportForZW) {
  const auto r = run("verify --suite monodromy --seed 4 --spec " + spec_file("zw", R"({"kind":"node","a":0,"b":0,"c":0})").string());
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  bool z_axis = false, w_axis = false;
  for (const auto& loop : j["checks"][0]["stats"]["loops"]) {
    EXPECT_EQ(loop["sign"], -1);
    const std::string label = loop["loop"];
    z_axis = z_axis || label.rfind("z-meridian", 0) == 0;
    w_axis = w_axis || label.rfind("w-meridian", 0) == 0;
  }
  EXPECT_TRUE(z_axis && w_axis);
}

TEST(Cli, FailingCheckExitsWithOneAndNamesIt) {
  const auto spec = spec_file("r3", R"({"kind":"r3"})").string();
  const auto r = run("verify --suite vanishing-order --tol slope_tol=1e-12 --spec " + spec);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(slurp(scratch() / "stderr.txt").find("vanishing_order"), std::string::npos);
  EXPECT_EQ(run("verify --suite vanishing-order --tol no_such_tolerance=1 --spec " + spec).code, 2);
}

TEST(Cli, ReportsAreByteIdenticalForEqualSeeds) {
  const auto spec = spec_file("ramified", R"({"kind":"ramified"})").string();
  for (const char* suite : {"harmonicity", "monodromy", "vanishing-order"}) {
    const auto a = run(std::string("verify --seed 17 --suite ") + suite + " --spec " + spec);
    const auto b = run(std::string("verify --seed 17 --suite ") + suite + " --spec " + spec);
    EXPECT_EQ(a.code, 0) << suite;
    EXPECT_EQ(a.out, b.out) << suite;
    EXPECT_FALSE(a.out.empty());
  }
}

TEST(Cli, ExportSigmaSatisfiesEquation) {
  const fs::path dir = scratch() / "sigma";
  const auto r = run("export sigma --out " + dir.string() + " --spec " + spec_file("zw1", R"({"kind":"node","a":1,"b":0,"c":0})").string());
  ASSERT_EQ(r.code, 0);
  std::ifstream in(dir / "sigma.csv");
  const auto pts = z2h::read_csv(in, false);
  ASSERT_GT(pts.size(), 10u);
  const auto h = z2h::DefiningFunction::node(1.0, 0.0, 0.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, std::abs(h(pts.point(i))));
  EXPECT_LT(worst, 1e-9);
}

TEST(Cli, ExportFiberWritesClosedObj) {
  const fs::path dir = scratch() / "fiber";
  ASSERT_EQ(run("export fiber --out " + dir.string() + " --spec " + spec_file("s23", R"({"kind":"seifert","p":2,"q":3})").string()).code, 0);
  std::ifstream obj(dir / "fiber.obj");
  std::string line;
  std::size_t vertices = 0;
  std::vector<std::string> indices;
  while (std::getline(obj, line)) {
    if (line.rfind("v ", 0) == 0) ++vertices;
    if (line.rfind("l ", 0) == 0) {
      std::istringstream ss(line.substr(2));
      for (std::string s; ss >> s;) indices.push_back(s);
    }
  }
  EXPECT_EQ(vertices, 1024u);
  ASSERT_EQ(indices.size(), 1025u);
  EXPECT_EQ(indices.front(), indices.back());
  std::ifstream csv(dir / "fiber.csv");
  EXPECT_EQ(z2h::read_csv(csv, true).size(), 1024u);
}

TEST(Cli, ExportFieldWritesGridAndSidecar) {
  const fs::path dir = scratch() / "field";
  ASSERT_EQ(run("export field --grid 64 --out " + dir.string() + " --spec " + spec_file("sun1", R"({"kind":"sun","degrees":[1]})").string()).code, 0);
  const json meta = json::parse(slurp(dir / "field_k1.json"));
  EXPECT_EQ(meta["n"], 64);
  EXPECT_EQ(meta["degree"], 1);
  std::ifstream csv(dir / "field_k1.csv");
  std::size_t rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 64u * 64u + 1u);
  EXPECT_NE(run("export fiber --out " + dir.string() + " --spec " + spec_file("sun1", R"({"kind":"sun"})").string()).code, 0);
}
