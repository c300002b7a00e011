#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "z2h/descriptor.hpp"

namespace z2h {

struct ExportOptions {
  std::filesystem::path dir = ".";
  /// Vertices per exported curve.
  std::size_t resolution = 1024;
  /// Sun grid size; 0 keeps the descriptor's value.
  int grid = 0;
};

/// Write artifacts for `what` in {sigma, fiber, field} and return the paths.
///
///  sigma  sigma.csv: samples of the branching set (points of R^4, R^3 or R^2;
///         fibers on S^3 for hopf_pullback, the unit circle for sun)
///  fiber  fiber.csv (points on S^3) and fiber.obj (stereographic image) for
///         seifert and hopf_pullback
///  field  field_k<degree>.csv with columns xi,eta,u in row-major grid order
///         (NaN off the active nodes) and field_k<degree>.json with the chart
///         metadata, for sun
///
/// Throws SchemaError when `what` does not apply to the descriptor and IOError
/// when a file cannot be written.
std::vector<std::filesystem::path> export_artifacts(const Descriptor& descriptor, const std::string& what,
                                                    const ExportOptions& options);

}  // namespace z2h
