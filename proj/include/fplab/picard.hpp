#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fplab/metric.hpp"

namespace fplab {

struct StopRule {
  double stop_tol = 0.0;
  std::size_t max_iter = 1000;

  void validate() const;
};

enum class PicardStatus { Converged, Cycle, MaxIter };

const char* to_string(PicardStatus s);

/// Orbit x_{n+1} = T x_n on a finite space. step_dists[n] = d(x_n, x_{n+1}).
struct PicardTrace {
  std::size_t start = 0;
  std::vector<std::size_t> iterates;  // x_0, x_1, ...; last entry is the final iterate
  std::vector<double> step_dists;
  PicardStatus status = PicardStatus::MaxIter;
  std::size_t steps = 0;               // applications of T before stopping
  std::vector<std::size_t> cycle;      // set when status == Cycle

  bool converged() const { return status == PicardStatus::Converged; }
  std::size_t fixed_point() const { return iterates.back(); }
  /// True if step_dists never increases.
  bool monotone() const;
};

PicardTrace iterate(const FiniteMetricSpace& space, const SelfMap& map, std::size_t x0,
                    const StopRule& rule = {});

/// Indices i with T(i) = i.
std::vector<std::size_t> verify_uniqueness(const FiniteMetricSpace& space, const SelfMap& map);

struct AttractionSummary {
  std::vector<PicardTrace> traces;  // one per start, in index order
  std::vector<std::size_t> limits;  // distinct fixed points reached, sorted
  std::vector<std::size_t> non_convergent;
  std::size_t max_steps = 0;

  bool all_converged() const { return non_convergent.empty(); }
};

AttractionSummary global_attraction(const FiniteMetricSpace& space, const SelfMap& map,
                                    const StopRule& rule = {});

/// Generic successive approximation x <- step(x) until dist(x, step(x)) <= stop_tol.
template <class State>
struct GenericTrace {
  State final_state;
  std::vector<double> step_dists;
  std::size_t steps = 0;
  bool converged = false;
};

template <class State, class Step, class Dist>
GenericTrace<State> picard(State x0, Step&& step, Dist&& dist, const StopRule& rule) {
  rule.validate();
  GenericTrace<State> trace{std::move(x0), {}, 0, false};
  while (trace.steps < rule.max_iter) {
    State next = step(trace.final_state);
    const double d = dist(trace.final_state, next);
    trace.step_dists.push_back(d);
    trace.final_state = std::move(next);
    ++trace.steps;
    if (d <= rule.stop_tol) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

}  // namespace fplab
