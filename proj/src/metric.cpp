#include "fplab/metric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace fplab {

std::string coords_label(const Coords& c) {
  std::ostringstream os;
  os << "(" << c[0] << "," << c[1] << ")";
  return os.str();
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<Point> points,
                                     std::vector<std::vector<double>> dist)
    : points_(std::move(points)) {
  const std::size_t n = points_.size();
  if (dist.size() != n) {
    std::ostringstream os;
    os << "distance matrix has " << dist.size() << " rows for " << n << " points";
    throw Error(os.str());
  }
  dist_.reserve(n * n);
  integral_ = true;
  for (const auto& row : dist) {
    if (row.size() != n) {
      std::ostringstream os;
      os << "distance matrix row has " << row.size() << " entries for " << n << " points";
      throw Error(os.str());
    }
    for (double d : row) {
      dist_.push_back(d);
      if (!std::isfinite(d) || std::floor(d) != d || std::abs(d) > 1e15) integral_ = false;
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::from_l1(std::vector<Point> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (!points[i].coords) throw Error("L1 distances need coordinates on every point");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Coords& a = *points[i].coords;
      const Coords& b = *points[j].coords;
      dist[i][j] = static_cast<double>(std::llabs(a[0] - b[0]) + std::llabs(a[1] - b[1]));
    }
  }
  return FiniteMetricSpace(std::move(points), std::move(dist));
}

std::optional<std::size_t> FiniteMetricSpace::find(const std::string& label) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].label == label) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> FiniteMetricSpace::find(const Coords& c) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].coords && *points_[i].coords == c) return i;
  }
  return std::nullopt;
}

SelfMap SelfMap::identity(std::size_t n) {
  SelfMap m;
  m.image.resize(n);
  for (std::size_t i = 0; i < n; ++i) m.image[i] = i;
  return m;
}

SelfMap SelfMap::constant(std::size_t n, std::size_t target) {
  return SelfMap{std::vector<std::size_t>(n, target)};
}

void require_self_map(const FiniteMetricSpace& space, const SelfMap& map) {
  if (map.size() != space.size()) {
    std::ostringstream os;
    os << "map has " << map.size() << " entries for " << space.size() << " points";
    throw Error(os.str());
  }
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map.image[i] >= space.size()) {
      std::ostringstream os;
      os << "map sends point " << i << " to invalid index " << map.image[i];
      throw Error(os.str());
    }
  }
}

PropertyVerdict validate_metric(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  PropertyVerdict verdict;
  verdict.samples = n * n * n;
  auto d = [&](std::size_t i, std::size_t j) { return space.distance(i, j); };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = d(i, j);
      const double vi = static_cast<double>(i);
      const double vj = static_cast<double>(j);
      if (!std::isfinite(v)) {
        verdict.add({{vi, vj}, v, 0.0, "non-finite"});
      } else if (v < 0.0) {
        verdict.add({{vi, vj}, v, 0.0, "negative"});
      } else if (i == j && v != 0.0) {
        verdict.add({{vi, vj}, v, 0.0, "nonzero-diagonal"});
      } else if (i != j && v == 0.0) {
        verdict.add({{vi, vj}, v, 0.0, "zero-off-diagonal"});
      }
      if (i < j && v != d(j, i)) verdict.add({{vi, vj}, v, d(j, i), "asymmetry"});
    }
  }

  // Triangle failures d(i,k) > d(i,j) + d(j,k), one row of i per task.
  std::vector<std::vector<Violation>> rows(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double lhs = d(i, k);
        const double rhs = d(i, j) + d(j, k);
        if (lhs > rhs) {
          rows[i].push_back({{static_cast<double>(i), static_cast<double>(j),
                              static_cast<double>(k)},
                             lhs, rhs, "triangle"});
        }
      }
    }
  }
  for (auto& row : rows) {
    for (auto& v : row) verdict.add(std::move(v));
  }
  return verdict;
}

Coords example_e1_map(const Coords& p) {
  if (p[0] <= p[1]) return {p[0], 0};
  return {0, p[1]};
}

ExampleE1 example_e1_space(int n_max) {
  if (n_max < 1) throw Error("example e1 needs n_max >= 1");

  const std::vector<Coords> base = {{0, 0}, {5, 6}, {5, 4}, {0, 4}};
  std::set<std::int64_t> axis;  // n of the (n,0) family
  for (int n = 1; n <= n_max; ++n) axis.insert(n);
  std::vector<Coords> diagonal;
  for (int n = 1; n <= n_max; ++n) diagonal.push_back({n + 12, n + 13});

  std::set<Coords> members(base.begin(), base.end());
  members.insert(diagonal.begin(), diagonal.end());
  for (auto n : axis) members.insert({n, 0});

  // Closure: T only ever produces (x1,0) or (0,x2); the former joins the (n,0) family.
  std::size_t added = 0;
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Coords> snapshot(members.begin(), members.end());
    for (const auto& p : snapshot) {
      const Coords img = example_e1_map(p);
      if (members.count(img)) continue;
      if (img[1] == 0 && img[0] >= 1) {
        axis.insert(img[0]);
        members.insert(img);
        ++added;
        grew = true;
      } else {
        throw Error("example e1 image " + coords_label(img) + " escapes the truncated space");
      }
    }
  }

  std::vector<Point> points;
  std::set<Coords> seen;
  auto push = [&](const Coords& c) {
    if (seen.insert(c).second) points.push_back({coords_label(c), c});
  };
  for (const auto& c : base) push(c);
  for (auto n : axis) push({n, 0});
  for (const auto& c : diagonal) push(c);

  FiniteMetricSpace space = FiniteMetricSpace::from_l1(std::move(points));
  SelfMap map;
  map.image.reserve(space.size());
  for (const auto& p : space.points()) {
    auto idx = space.find(example_e1_map(*p.coords));
    if (!idx) throw Error("example e1 image of " + p.label + " is missing");
    map.image.push_back(*idx);
  }
  return {std::move(space), std::move(map), n_max, added};
}

}  // namespace fplab
