#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace z2h {

/// An ordered list of points in R^n (n = 2, 3 or 4). A closed polyline stores
/// its first point once; the closing segment back to it is implicit.
class Polyline {
 public:
  Polyline(std::size_t dim, std::vector<double> coords, bool closed);

  static Polyline from_points(const std::vector<std::vector<double>>& points, bool closed);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / dim_; }
  bool closed() const { return closed_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const { return coords_; }

  /// Number of segments, counting the implicit closing segment.
  std::size_t segment_count() const { return closed_ ? size() : size() - 1; }

  /// Every segment split into `factor` equal pieces.
  Polyline refined(std::size_t factor) const;
  Polyline reversed() const;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  bool closed_;
};

/// CSV with header `x0,x1,...` and one point per row.
void write_csv(std::ostream& out, const Polyline& line);
Polyline read_csv(std::istream& in, bool closed);

/// Wavefront OBJ: `v` records followed by one `l` record (closed curves
/// repeat the first index). Only 3D polylines are accepted.
void write_obj(std::ostream& out, const Polyline& line);

}  // namespace z2h
