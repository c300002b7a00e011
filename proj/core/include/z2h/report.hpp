#pragma once

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace z2h {

/// Named numerical tolerances with built-in defaults; overrides come from
/// `name=value` strings.
class Tolerances {
 public:
  Tolerances();

  double get(const std::string& name) const;
  void set(const std::string& name, double value);
  /// Parse `name=value`. Throws SchemaError for unknown names or bad values.
  void apply(const std::string& assignment);
  const std::map<std::string, double>& all() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct Check {
  std::string name;
  std::size_t points = 0;
  nlohmann::json stats = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  bool pass = false;
};

struct Report {
  nlohmann::json construction;
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool pass() const;
  /// Name of the first failing check, or empty.
  std::string first_failure() const;
  nlohmann::json to_json() const;
  /// Pretty-printed JSON followed by a newline.
  std::string dump() const;
};

}  // namespace z2h
