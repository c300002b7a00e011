#include "z2h/polyline.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "z2h/error.hpp"

namespace z2h {
namespace {

bool same_point(std::span<const double> a, std::span<const double> b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return false;
  return true;
}

}  // namespace

Polyline::Polyline(std::size_t dim, std::vector<double> coords, bool closed)
    : dim_(dim), coords_(std::move(coords)), closed_(closed) {
  if (dim_ < 2 || dim_ > 4) throw Error(ErrorCode::InvalidArgument, "polyline dimension must be 2, 3 or 4");
  if (coords_.size() % dim_ != 0) throw Error(ErrorCode::InvalidArgument, "coordinate count not a multiple of dim");
  if (size() < 2) throw Error(ErrorCode::InvalidArgument, "polyline needs at least 2 points");
  for (double c : coords_)
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite polyline coordinate");
  for (std::size_t i = 0; i + 1 < size(); ++i)
    if (same_point(point(i), point(i + 1)))
      throw Error(ErrorCode::InvalidArgument, "consecutive polyline points coincide");
  if (closed_ && same_point(point(0), point(size() - 1)))
    throw Error(ErrorCode::InvalidArgument, "closed polyline must not repeat its first point");
}

Polyline Polyline::from_points(const std::vector<std::vector<double>>& points, bool closed) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "empty polyline");
  const std::size_t dim = points.front().size();
  std::vector<double> coords;
  coords.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.size() != dim) throw Error(ErrorCode::InvalidArgument, "ragged polyline points");
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return Polyline(dim, std::move(coords), closed);
}

Polyline Polyline::refined(std::size_t factor) const {
  if (factor == 0) throw Error(ErrorCode::InvalidArgument, "refinement factor must be positive");
  std::vector<double> out;
  out.reserve(segment_count() * factor * dim_ + dim_);
  for (std::size_t s = 0; s < segment_count(); ++s) {
    auto a = point(s);
    auto b = point((s + 1) % size());
    for (std::size_t j = 0; j < factor; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(factor);
      for (std::size_t k = 0; k < dim_; ++k) out.push_back(a[k] + t * (b[k] - a[k]));
    }
  }
  if (!closed_) {
    auto last = point(size() - 1);
    out.insert(out.end(), last.begin(), last.end());
  }
  return Polyline(dim_, std::move(out), closed_);
}

Polyline Polyline::reversed() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (std::size_t i = size(); i-- > 0;) {
    auto p = point(i);
    out.insert(out.end(), p.begin(), p.end());
  }
  return Polyline(dim_, std::move(out), closed_);
}

void write_csv(std::ostream& out, const Polyline& line) {
  for (std::size_t k = 0; k < line.dim(); ++k) out << (k ? "," : "") << 'x' << k;
  out << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < line.size(); ++i) {
    auto p = line.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << p[k];
    out << '\n';
  }
}

Polyline read_csv(std::istream& in, bool closed) {
  std::string row;
  if (!std::getline(in, row)) throw Error(ErrorCode::IOError, "missing CSV header");
  std::size_t dim = 1;
  for (char c : row) dim += c == ',';
  std::vector<double> coords;
  while (std::getline(in, row)) {
    if (row.empty()) continue;
    std::stringstream ss(row);
    std::string cell;
    std::size_t n = 0;
    while (std::getline(ss, cell, ',')) {
      try {
        coords.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(ErrorCode::IOError, "bad CSV number '" + cell + "'");
      }
      ++n;
    }
    if (n != dim) throw Error(ErrorCode::IOError, "CSV row width does not match header");
  }
  return Polyline(dim, std::move(coords), closed);
}

void write_obj(std::ostream& out, const Polyline& line) {
  if (line.dim() != 3) throw Error(ErrorCode::InvalidArgument, "OBJ export needs a 3D polyline");
  out.precision(17);
  for (std::size_t i = 0; i < line.size(); ++i) {
    auto p = line.point(i);
    out << "v " << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
  }
  out << 'l';
  for (std::size_t i = 0; i < line.size(); ++i) out << ' ' << i + 1;
  if (line.closed()) out << " 1";
  out << '\n';
}

}  // namespace z2h
