#include "fplab/picard.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fplab {

void StopRule::validate() const {
  if (!(stop_tol >= 0.0)) throw Error("stop_tol must be >= 0");
  if (max_iter < 1) throw Error("max_iter must be >= 1");
}

const char* to_string(PicardStatus s) {
  switch (s) {
    case PicardStatus::Converged:
      return "converged";
    case PicardStatus::Cycle:
      return "cycle";
    case PicardStatus::MaxIter:
      return "max-iter";
  }
  return "unknown";
}

bool PicardTrace::monotone() const {
  for (std::size_t i = 1; i < step_dists.size(); ++i) {
    if (step_dists[i] > step_dists[i - 1]) return false;
  }
  return true;
}

PicardTrace iterate(const FiniteMetricSpace& space, const SelfMap& map, std::size_t x0,
                    const StopRule& rule) {
  rule.validate();
  require_self_map(space, map);
  if (x0 >= space.size()) {
    std::ostringstream os;
    os << "start index " << x0 << " outside the space";
    throw Error(os.str());
  }

  PicardTrace trace;
  trace.start = x0;
  trace.iterates.push_back(x0);
  std::vector<bool> visited(space.size(), false);
  visited[x0] = true;

  std::size_t x = x0;
  for (std::size_t n = 0;; ++n) {
    const std::size_t next = map(x);
    const double a = space.distance(x, next);
    trace.step_dists.push_back(a);
    if (a <= rule.stop_tol) {
      trace.status = PicardStatus::Converged;
      return trace;
    }
    if (n == rule.max_iter) {
      trace.status = PicardStatus::MaxIter;
      return trace;
    }
    if (visited[next]) {
      auto from = std::find(trace.iterates.begin(), trace.iterates.end(), next);
      trace.cycle.assign(from, trace.iterates.end());
      trace.iterates.push_back(next);
      ++trace.steps;
      trace.status = PicardStatus::Cycle;
      return trace;
    }
    visited[next] = true;
    trace.iterates.push_back(next);
    ++trace.steps;
    x = next;
  }
}

std::vector<std::size_t> verify_uniqueness(const FiniteMetricSpace& space, const SelfMap& map) {
  require_self_map(space, map);
  std::vector<std::size_t> fixed;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map(i) == i) fixed.push_back(i);
  }
  return fixed;
}

AttractionSummary global_attraction(const FiniteMetricSpace& space, const SelfMap& map,
                                    const StopRule& rule) {
  rule.validate();
  require_self_map(space, map);
  const std::size_t n = space.size();
  AttractionSummary summary;
  summary.traces.resize(n);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    summary.traces[i] = iterate(space, map, static_cast<std::size_t>(i), rule);
  }

  std::set<std::size_t> limits;
  for (const auto& t : summary.traces) {
    if (t.converged()) {
      limits.insert(t.fixed_point());
      summary.max_steps = std::max(summary.max_steps, t.steps);
    } else {
      summary.non_convergent.push_back(t.start);
    }
  }
  summary.limits.assign(limits.begin(), limits.end());
  return summary;
}

}  // namespace fplab
