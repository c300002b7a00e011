// z2h: construct, verify and export Z2 harmonic forms from JSON descriptors.
#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "z2h/descriptor.hpp"
#include "z2h/error.hpp"
#include "z2h/export.hpp"
#include "z2h/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitSchema = 2;

z2h::Descriptor load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw z2h::Error(z2h::ErrorCode::IOError, "cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw z2h::Error(z2h::ErrorCode::SchemaError, std::string("/: ") + e.what());
  }
  return z2h::Descriptor::parse(j);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  out << text;
  if (!out) throw z2h::Error(z2h::ErrorCode::IOError, "cannot write " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Z2 harmonic forms: catalogue, verification suites and the Sun pipeline"};
  app.require_subcommand(1);

  std::string spec_path, suite, out_dir, what;
  std::uint64_t seed = 1;
  std::vector<std::string> tols;
  int grid = 0;
  std::size_t resolution = 1024;

  auto* construct = app.add_subcommand("construct", "validate a descriptor and echo it with defaults filled");
  construct->add_option("--spec", spec_path, "descriptor JSON file")->required();
  construct->add_option("--out", out_dir, "also write descriptor.json here");

  auto* verify = app.add_subcommand("verify", "run an invariant suite and print the JSON report");
  verify->add_option("--spec", spec_path, "descriptor JSON file")->required();
  verify->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(z2h::suite_names()));
  verify->add_option("--seed", seed, "sampling seed");
  verify->add_option("--tol", tols, "tolerance override name=value (repeatable)");
  verify->add_option("--out", out_dir, "also write report.json here");
  verify->add_option("--grid", grid, "Sun grid size (overrides the descriptor)");
  verify->add_option("--resolution", resolution, "vertices per closed curve");

  auto* exporter = app.add_subcommand("export", "write CSV/OBJ artifacts");
  exporter->add_option("what", what, "sigma, fiber or field")->required()->check(CLI::IsMember({"sigma", "fiber", "field"}));
  exporter->add_option("--spec", spec_path, "descriptor JSON file")->required();
  exporter->add_option("--out", out_dir, "output directory")->required();
  exporter->add_option("--grid", grid, "Sun grid size (overrides the descriptor)");
  exporter->add_option("--resolution", resolution, "vertices per curve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitSchema;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const z2h::Descriptor d = load(spec_path);
    if (*construct) {
      const std::string text = d.to_json().dump(2) + "\n";
      std::cout << text;
      if (!out_dir.empty()) write_file(std::filesystem::path(out_dir) / "descriptor.json", text);
      return kExitPass;
    }
    if (*exporter) {
      z2h::ExportOptions opt;
      opt.dir = out_dir;
      opt.grid = grid;
      opt.resolution = resolution;
      for (const auto& p : z2h::export_artifacts(d, what, opt)) std::cout << p.string() << '\n';
      return kExitPass;
    }

    z2h::VerifyOptions opt;
    opt.suite = suite;
    opt.seed = seed;
    opt.grid = grid;
    opt.resolution = resolution;
    for (const auto& t : tols) opt.tol.apply(t);
    const z2h::Report report = z2h::verify(d, opt);
    const std::string text = report.dump();
    std::cout << text;
    if (!out_dir.empty()) write_file(std::filesystem::path(out_dir) / "report.json", text);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "runtime: " << seconds << " s\n";
    if (!report.pass()) {
      std::cerr << "FAIL: " << report.first_failure() << '\n';
      return kExitCheckFailure;
    }
    return kExitPass;
  } catch (const z2h::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSchema;
  }
}
