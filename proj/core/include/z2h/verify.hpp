#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "z2h/descriptor.hpp"
#include "z2h/report.hpp"

namespace z2h {

struct VerifyOptions {
  std::string suite;
  std::uint64_t seed = 0;
  Tolerances tol;
  /// Sun grid size; 0 keeps the descriptor's value.
  int grid = 0;
  /// Samples per closed curve (fibers, loops on S^3).
  std::size_t resolution = 1024;
  /// Random sample points per pointwise check.
  std::size_t points = 200;
};

/// harmonicity, monodromy, vanishing-order, topology, sun
const std::vector<std::string>& suite_names();

/// Run one suite against a descriptor. Throws SchemaError when the suite
/// does not apply to the descriptor's kind.
Report verify(const Descriptor& descriptor, const VerifyOptions& options);

/// Sun pipeline checks (manufactured solution, A1 extraction, linearity,
/// resolution and truncation stability, null combination, decay).
std::vector<Check> sun_checks(const SunSpec& spec, const VerifyOptions& options);

}  // namespace z2h
