#include "fplab/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace fplab::volterra {

double sup_distance(const GridFunction& a, const GridFunction& b) {
  if (a.nodes() != b.nodes() || a.dim() != b.dim()) {
    throw Error("sup distance between grid functions of different shape");
  }
  double d = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) d = std::max(d, std::abs(da[i] - db[i]));
  return d;
}

void Problem::validate() const {
  if (dim < 1) throw Error("Volterra problem needs dim >= 1");
  if (M < 1) throw Error("Volterra problem needs M >= 1");
  if (!g || !K) throw Error("Volterra problem needs g and K");
}

GridFunction Problem::sample_g() const {
  GridFunction out(M + 1, dim);
  for (std::size_t j = 0; j <= M; ++j) {
    g(node(j), out.at(j));
    for (double v : out.at(j)) {
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "g is not finite at t=" << node(j);
        throw Error(os.str());
      }
    }
  }
  return out;
}

Forcing scalar_forcing(std::function<double(double)> g) {
  return [g = std::move(g)](double t, std::span<double> out) { out[0] = g(t); };
}

Kernel scalar_kernel(std::function<double(double, double)> K) {
  return [K = std::move(K)](double s, std::span<const double> x, std::span<double> out) {
    out[0] = K(s, x[0]);
  };
}

namespace {

constexpr std::size_t kParallelNodes = 4096;

GridFunction sweep(const Problem& p, const GridFunction& gvals, const GridFunction& x) {
  if (x.nodes() != p.M + 1 || x.dim() != p.dim) {
    throw Error("grid function shape does not match the problem grid");
  }
  const std::size_t nodes = p.M + 1;
  GridFunction kvals(nodes, p.dim);
  bool finite = true;

#pragma omp parallel for if (nodes >= kParallelNodes) reduction(&& : finite)
  for (std::ptrdiff_t jj = 0; jj < static_cast<std::ptrdiff_t>(nodes); ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    p.K(p.node(j), x.at(j), kvals.at(j));
    for (double v : kvals.at(j)) finite = finite && std::isfinite(v);
  }
  if (!finite) throw Error("kernel returned a non-finite value");

  // Running trapezoid sum, one pass.
  const double half_h = 0.5 / static_cast<double>(p.M);
  GridFunction out(nodes, p.dim);
  std::vector<double> acc(p.dim, 0.0);
  for (std::size_t c = 0; c < p.dim; ++c) out.at(0)[c] = gvals.at(0)[c];
  for (std::size_t j = 1; j < nodes; ++j) {
    for (std::size_t c = 0; c < p.dim; ++c) {
      acc[c] += half_h * (kvals.at(j - 1)[c] + kvals.at(j)[c]);
      out.at(j)[c] = gvals.at(j)[c] + acc[c];
    }
  }
  return out;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

GridFunction apply_T(const Problem& problem, const GridFunction& x) {
  problem.validate();
  return sweep(problem, problem.sample_g(), x);
}

Solution solve(const Problem& problem, const SolveOptions& opts) {
  problem.validate();
  opts.rule.validate();
  const GridFunction gvals = problem.sample_g();

  auto trace = picard(
      gvals, [&](const GridFunction& x) { return sweep(problem, gvals, x); },
      [](const GridFunction& a, const GridFunction& b) { return sup_distance(a, b); },
      opts.rule);

  Solution sol;
  sol.iterations = trace.steps;
  sol.step_dists = std::move(trace.step_dists);
  sol.values = std::move(trace.final_state);
  sol.residual = sup_distance(sol.values, sweep(problem, gvals, sol.values));
  const double residual_tol =
      opts.residual_tol > 0.0 ? opts.residual_tol : 10.0 * opts.rule.stop_tol;
  sol.converged = trace.converged && sol.residual <= residual_tol;
  return sol;
}

PropertyVerdict check_condition_ii(const Problem& problem, std::size_t samples,
                                   const SamplingOptions& opts) {
  problem.validate();
  if (!problem.hypothesis) throw Error("condition (ii) check needs a hypothesis");
  if (samples < 1) throw Error("condition (ii) check needs samples >= 1");
  if (!(opts.box_lo < opts.box_hi)) throw Error("sampling box must satisfy lo < hi");

  const Hypothesis& h = *problem.hypothesis;
  const GridFunction gvals = problem.sample_g();
  const std::size_t nodes = problem.M + 1;
  const std::size_t dim = problem.dim;

  struct SampleResult {
    std::vector<Violation> witnesses;
    std::size_t failures = 0;
    std::size_t active = 0;
  };
  std::vector<SampleResult> results(samples);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(samples); ++si) {
    const auto sample = static_cast<std::uint64_t>(si);
    // One stream per sample keeps results independent of the thread schedule.
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> box(opts.box_lo, opts.box_hi);

    GridFunction x(nodes, dim);
    GridFunction y(nodes, dim);
    for (double& v : x.data()) v = box(rng);
    for (double& v : y.data()) v = box(rng);
    const GridFunction tx = sweep(problem, gvals, x);

    SampleResult& res = results[si];
    std::vector<double> kx(dim);
    std::vector<double> ky(dim);
    for (std::size_t j = 0; j < nodes; ++j) {
      const double t = problem.node(j);
      const double xy = max_abs_diff(x.at(j), y.at(j));
      if (h.alpha.value() * max_abs_diff(x.at(j), tx.at(j)) > xy) continue;
      ++res.active;
      problem.K(t, x.at(j), kx);
      problem.K(t, y.at(j), ky);
      const double lhs = h.gp.psi(h.gauge(max_abs_diff(kx, ky)));
      const double gxy = h.gauge(xy);
      const double rhs = h.F(h.gp.psi(gxy), h.gp.phi(gxy));
      if (lhs <= rhs + h.tol) continue;
      ++res.failures;
      if (res.witnesses.size() < opts.max_witnesses) {
        std::vector<double> point{static_cast<double>(sample), t};
        point.insert(point.end(), x.at(j).begin(), x.at(j).end());
        point.insert(point.end(), y.at(j).begin(), y.at(j).end());
        res.witnesses.push_back({std::move(point), lhs, rhs, "condition-ii"});
      }
    }
  }

  PropertyVerdict verdict;
  std::size_t failures = 0;
  std::size_t active = 0;
  for (auto& r : results) {
    failures += r.failures;
    active += r.active;
    for (auto& w : r.witnesses) {
      if (verdict.violations.size() < opts.max_witnesses) verdict.add(std::move(w));
    }
  }
  verdict.samples = samples * nodes;
  std::ostringstream os;
  os << active << " premise-active nodes, " << failures << " failing";
  verdict.note = os.str();
  return verdict;
}

PropertyVerdict supnorm_gauge_lemma_check(std::span<const double> a_fn,
                                          std::span<const double> b_fn, double L,
                                          const IntegralGauge& gauge) {
  if (a_fn.size() != b_fn.size() || a_fn.empty()) {
    throw Error("gauge lemma check needs two non-empty grid functions of equal length");
  }
  if (!(L > 0.0)) throw Error("gauge lemma check needs L > 0");

  PropertyVerdict verdict;
  verdict.samples = a_fn.size();
  std::vector<Violation> premise_failures;
  for (std::size_t j = 0; j < a_fn.size(); ++j) {
    const double lhs = gauge(std::abs(a_fn[j]));
    const double rhs = L * gauge(std::abs(b_fn[j]));
    if (lhs == 0.0 && rhs == 0.0) continue;
    if (!(lhs < rhs)) premise_failures.push_back({{static_cast<double>(j)}, lhs, rhs, "premise"});
  }
  if (!premise_failures.empty()) {
    verdict.violations = std::move(premise_failures);
    verdict.status = PropertyVerdict::Status::PremiseNotEstablished;
    verdict.note = "premise not established";
    return verdict;
  }

  const double lhs = gauge(max_abs(a_fn));
  const double rhs = L * gauge(max_abs(b_fn));
  if (lhs == 0.0 && rhs == 0.0) return verdict;
  if (!(lhs < rhs)) verdict.add({{}, lhs, rhs, "sup-norm"});
  return verdict;
}

}  // namespace fplab::volterra
