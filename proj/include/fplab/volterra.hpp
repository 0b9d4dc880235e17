#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fplab/gauges.hpp"
#include "fplab/picard.hpp"
#include "fplab/verdict.hpp"
#include "fplab/verifier.hpp"

namespace fplab::volterra {

/// Values of an R^n-valued function at the nodes t_j = j/M, row-major by node.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(std::size_t nodes, std::size_t dim, double fill = 0.0)
      : nodes_(nodes), dim_(dim), data_(nodes * dim, fill) {}

  std::size_t nodes() const { return nodes_; }
  std::size_t dim() const { return dim_; }

  std::span<double> at(std::size_t j) { return {data_.data() + j * dim_, dim_}; }
  std::span<const double> at(std::size_t j) const { return {data_.data() + j * dim_, dim_}; }
  /// Scalar access for dim() == 1.
  double operator[](std::size_t j) const { return data_[j * dim_]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

 private:
  std::size_t nodes_ = 0;
  std::size_t dim_ = 1;
  std::vector<double> data_;
};

/// Max over nodes and coordinates of |a - b|.
double sup_distance(const GridFunction& a, const GridFunction& b);

/// g: t -> R^n written into `out`; K: (s, x) -> R^n written into `out`.
using Forcing = std::function<void(double t, std::span<double> out)>;
using Kernel = std::function<void(double s, std::span<const double> x, std::span<double> out)>;

/// Condition (ii) data for check_condition_ii.
struct Hypothesis {
  Alpha alpha;
  CClassFn F;
  GaugePair gp;
  IntegralGauge gauge;
  double tol = 1e-9;
};

/// x(t) = g(t) + int_0^t K(s, x(s)) ds on [0,1], sampled on M+1 uniform nodes.
struct Problem {
  std::size_t dim = 1;
  Forcing g;
  Kernel K;
  std::size_t M = 100;
  std::optional<Hypothesis> hypothesis;

  void validate() const;
  double node(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(M); }
  GridFunction sample_g() const;
};

/// Scalar helpers for the common one-dimensional case.
Forcing scalar_forcing(std::function<double(double)> g);
Kernel scalar_kernel(std::function<double(double, double)> K);

/// T(x)(t_j) = g(t_j) + composite trapezoid of K(s, x(s)) over [0, t_j].
GridFunction apply_T(const Problem& problem, const GridFunction& x);

struct SolveOptions {
  StopRule rule{1e-12, 500};
  /// converged also requires ||x - T x|| <= residual_tol; <= 0 means 10 * stop_tol.
  double residual_tol = 0.0;
};

struct Solution {
  GridFunction values;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> step_dists;
};

/// Successive approximation from x^0 = g. On max_iter exhaustion the last
/// iterate is returned with converged = false.
Solution solve(const Problem& problem, const SolveOptions& opts = {});

struct SamplingOptions {
  double box_lo = -1.0;
  double box_hi = 1.0;
  std::uint64_t seed = 0;
  std::size_t max_witnesses = 100;  // failures beyond this are counted, not stored
};

/// Draws `samples` pairs of piecewise-linear grid functions with node values
/// uniform in the box and checks condition (ii) at every node where its
/// premise holds. Violation points are {sample, t, x(t)..., y(t)...}.
PropertyVerdict check_condition_ii(const Problem& problem, std::size_t samples,
                                   const SamplingOptions& opts = {});

/// Given G(|a(t)|) < L G(|b(t)|) at every node (nodes with both sides 0 are
/// vacuous), checks G(||a||) < L G(||b||). Returns PremiseNotEstablished when
/// the pointwise inequality fails somewhere.
PropertyVerdict supnorm_gauge_lemma_check(std::span<const double> a_fn,
                                          std::span<const double> b_fn, double L,
                                          const IntegralGauge& gauge);

}  // namespace fplab::volterra
