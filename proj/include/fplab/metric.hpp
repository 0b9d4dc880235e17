#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fplab/verdict.hpp"

namespace fplab {

using Coords = std::array<std::int64_t, 2>;

struct Point {
  std::string label;
  std::optional<Coords> coords;
};

std::string coords_label(const Coords& c);

/// Finite point set with an explicit distance matrix. Construction only checks
/// shapes; validate_metric() reports axiom failures.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<Point> points, std::vector<std::vector<double>> dist);

  /// Distances from the L1 metric on integer coordinates.
  static FiniteMetricSpace from_l1(std::vector<Point> points);

  std::size_t size() const { return points_.size(); }
  double distance(std::size_t i, std::size_t j) const { return dist_[i * points_.size() + j]; }
  const Point& point(std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

  std::optional<std::size_t> find(const std::string& label) const;
  std::optional<std::size_t> find(const Coords& c) const;

  /// True when every distance is an integer small enough for exact int64 math.
  bool integral_distances() const { return integral_; }

 private:
  std::vector<Point> points_;
  std::vector<double> dist_;
  bool integral_ = false;
};

/// T as an index table: image[i] is the index of T(point i).
struct SelfMap {
  std::vector<std::size_t> image;

  std::size_t operator()(std::size_t i) const { return image[i]; }
  std::size_t size() const { return image.size(); }

  static SelfMap identity(std::size_t n);
  static SelfMap constant(std::size_t n, std::size_t target);
};

/// Throws fplab::Error unless `map` is a total self-map of `space`.
void require_self_map(const FiniteMetricSpace& space, const SelfMap& map);

/// Reports every metric-axiom failure with a witness index tuple.
PropertyVerdict validate_metric(const FiniteMetricSpace& space);

/// Truncated Example e1 space and its map T.
struct ExampleE1 {
  FiniteMetricSpace space;
  SelfMap map;
  int n_max = 0;
  std::size_t closure_points = 0;  // (n,0) points added so T stays inside
};

/// Four fixed points, (n,0) and (n+12,n+13) for n = 1..n_max, the L1 metric,
/// and T(x1,x2) = (x1,0) if x1 <= x2 else (0,x2). The (n,0) family is
/// extended until every image lies in the set.
ExampleE1 example_e1_space(int n_max);

/// T of Example e1 on raw coordinates.
Coords example_e1_map(const Coords& p);

}  // namespace fplab
