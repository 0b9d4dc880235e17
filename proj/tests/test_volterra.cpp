#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "fplab/volterra.hpp"

using namespace fplab;
using namespace fplab::volterra;

namespace {

Problem scalar_problem(std::function<double(double)> g, std::function<double(double, double)> K,
                       std::size_t M) {
  Problem p;
  p.g = scalar_forcing(std::move(g));
  p.K = scalar_kernel(std::move(K));
  p.M = M;
  return p;
}

double max_error(const Problem& p, const GridFunction& x, double (*exact)(double)) {
  double err = 0.0;
  for (std::size_t j = 0; j <= p.M; ++j) err = std::max(err, std::abs(x[j] - exact(p.node(j))));
  return err;
}

double exp_t(double t) { return std::exp(t); }
double exp_m2t(double t) { return std::exp(-2.0 * t); }

Hypothesis identity_gauges(double alpha_den = 2) {
  return {Alpha::rational(1, static_cast<std::int64_t>(alpha_den)), CClassFn::scaled(0.5),
          GaugePair::linear(1.0, 1.0), IntegralGauge::identity()};
}

}  // namespace

TEST(ApplyT, ZeroKernelReturnsForcing) {
  const auto p = scalar_problem([](double t) { return t; }, [](double, double) { return 0.0; }, 10);
  GridFunction x(11, 1, 42.0);
  const auto tx = apply_T(p, x);
  for (std::size_t j = 0; j <= 10; ++j) EXPECT_DOUBLE_EQ(tx[j], p.node(j));
}

TEST(ApplyT, ConstantIntegrandIsExact) {
  const auto p = scalar_problem([](double) { return 1.0; }, [](double, double x) { return x; }, 10);
  const auto tx = apply_T(p, GridFunction(11, 1, 1.0));
  for (std::size_t j = 0; j <= 10; ++j) EXPECT_NEAR(tx[j], 1.0 + p.node(j), 1e-15);
}

TEST(ApplyT, LinearIntegrandIsExact) {
  const auto p = scalar_problem([](double) { return 0.0; }, [](double s, double) { return s; }, 10);
  const auto tx = apply_T(p, GridFunction(11, 1));
  for (std::size_t j = 0; j <= 10; ++j) {
    const double t = p.node(j);
    EXPECT_NEAR(tx[j], t * t / 2.0, 1e-15);
  }
}

TEST(ApplyT, IsCausal) {
  const auto p = scalar_problem([](double t) { return std::cos(t); },
                                [](double s, double x) { return std::sin(s * x) + x * x; }, 64);
  GridFunction x(65, 1);
  for (std::size_t j = 0; j <= 64; ++j) x.at(j)[0] = 0.3 * std::sin(7.0 * p.node(j));
  const auto base = apply_T(p, x);
  for (std::size_t cut : {0u, 10u, 40u, 63u}) {
    GridFunction y = x;
    for (std::size_t j = cut + 1; j <= 64; ++j) y.at(j)[0] += 5.0;
    const auto ty = apply_T(p, y);
    for (std::size_t j = 0; j <= cut; ++j) EXPECT_EQ(ty[j], base[j]) << cut << " " << j;
    EXPECT_NE(ty[cut + 1], base[cut + 1]);
  }
}

TEST(ApplyT, NonFiniteKernelThrows) {
  const auto p = scalar_problem([](double) { return 1.0; },
                                [](double, double) { return std::numeric_limits<double>::quiet_NaN(); },
                                4);
  EXPECT_THROW(apply_T(p, GridFunction(5, 1)), Error);
  EXPECT_THROW(solve(p), Error);
}

TEST(Solve, ExponentialGrowth) {
  const auto p = scalar_problem([](double) { return 1.0; }, [](double, double x) { return x; }, 1000);
  const auto sol = solve(p);
  EXPECT_TRUE(sol.converged);
  EXPECT_LT(max_error(p, sol.values, exp_t), 1e-5);
  EXPECT_LE(sol.residual, 1e-11);
}

TEST(Solve, ExponentialDecay) {
  const auto p =
      scalar_problem([](double) { return 1.0; }, [](double, double x) { return -2.0 * x; }, 1000);
  const auto sol = solve(p);
  EXPECT_TRUE(sol.converged);
  EXPECT_LT(max_error(p, sol.values, exp_m2t), 1e-4);
}

TEST(Solve, TrapezoidIsSecondOrder) {
  auto err = [](std::size_t M) {
    const auto p = scalar_problem([](double) { return 1.0; }, [](double, double x) { return x; }, M);
    return max_error(p, solve(p).values, exp_t);
  };
  const double ratio = err(500) / err(1000);
  EXPECT_GE(ratio, 3.0);
  EXPECT_LE(ratio, 5.0);
  const double decay = [] {
    auto e = [](std::size_t M) {
      const auto p =
          scalar_problem([](double) { return 1.0; }, [](double, double x) { return -2.0 * x; }, M);
      return max_error(p, solve(p).values, exp_m2t);
    };
    return e(200) / e(400);
  }();
  EXPECT_GE(decay, 3.0);
  EXPECT_LE(decay, 5.0);
}

TEST(Solve, ZeroKernelConvergesInOneStep) {
  const auto p = scalar_problem([](double t) { return t * t - 3.0; },
                                [](double, double) { return 0.0; }, 50);
  const auto sol = solve(p);
  EXPECT_TRUE(sol.converged);
  EXPECT_EQ(sol.iterations, 1u);
  for (std::size_t j = 0; j <= 50; ++j) EXPECT_EQ(sol.values[j], p.node(j) * p.node(j) - 3.0);
}

TEST(Solve, ContractiveKernelFromAnyForcing) {
  // |0.8 sin x - 0.8 sin y| <= 0.8 |x - y|. The fixed point satisfies its own equation.
  const auto p = scalar_problem([](double t) { return 2.0 - 5.0 * t; },
                                [](double s, double x) { return 0.8 * std::sin(x) + s; }, 400);
  const auto sol = solve(p);
  ASSERT_TRUE(sol.converged);
  EXPECT_LE(sup_distance(sol.values, apply_T(p, sol.values)), 1e-11);
  for (std::size_t i = 1; i < sol.step_dists.size(); ++i) {
    EXPECT_LE(sol.step_dists[i], sol.step_dists[i - 1] * (1.0 + 1e-12) + 1e-15);
  }
}

TEST(Solve, StrongKernelNeedsMoreIterations) {
  const auto p = scalar_problem([](double) { return 1.0; }, [](double, double x) { return 5.0 * x; }, 100);
  SolveOptions opts;
  opts.rule.max_iter = 10;
  const auto sol = solve(p, opts);
  EXPECT_FALSE(sol.converged);
  EXPECT_EQ(sol.iterations, 10u);
  EXPECT_EQ(sol.values.nodes(), 101u);
  // Neumann partial sums: the last step is 5^10/10! times the trapezoid factor.
  EXPECT_GT(sol.step_dists.back(), 1.0);
}

TEST(Solve, RotationSystem) {
  Problem p;
  p.dim = 2;
  p.M = 1000;
  p.g = [](double, std::span<double> out) {
    out[0] = 1.0;
    out[1] = 0.0;
  };
  p.K = [](double, std::span<const double> x, std::span<double> out) {
    out[0] = -x[1];
    out[1] = x[0];
  };
  const auto sol = solve(p);
  ASSERT_TRUE(sol.converged);
  double err = 0.0;
  for (std::size_t j = 0; j <= p.M; ++j) {
    const double t = p.node(j);
    err = std::max({err, std::abs(sol.values.at(j)[0] - std::cos(t)),
                    std::abs(sol.values.at(j)[1] - std::sin(t))});
  }
  EXPECT_LT(err, 1e-6);
}

TEST(Solve, RejectsInvalidProblems) {
  auto p = scalar_problem([](double) { return 1.0; }, [](double, double x) { return x; }, 0);
  EXPECT_THROW(solve(p), Error);
  p.M = 10;
  p.dim = 0;
  EXPECT_THROW(solve(p), Error);
  p.dim = 1;
  SolveOptions bad;
  bad.rule.max_iter = 0;
  EXPECT_THROW(solve(p, bad), Error);
}

TEST(ConditionII, HalfLipschitzKernelPasses) {
  auto p = scalar_problem([](double) { return 0.0; }, [](double, double x) { return 0.5 * x; }, 20);
  p.hypothesis = identity_gauges();
  const auto v = check_condition_ii(p, 1000, {.seed = 17});
  EXPECT_TRUE(v.passed()) << v.note;
  EXPECT_EQ(v.samples, 1000u * 21u);
}

TEST(ConditionII, QuadraticKernelFails) {
  auto p = scalar_problem([](double) { return 0.0; }, [](double, double x) { return x * x; }, 20);
  p.hypothesis = identity_gauges();
  const auto v = check_condition_ii(p, 200, {.box_lo = -10, .box_hi = 10, .seed = 5});
  ASSERT_FALSE(v.passed());
  for (const auto& w : v.violations) {
    ASSERT_EQ(w.point.size(), 4u);
    const double x = w.point[2];
    const double y = w.point[3];
    EXPECT_DOUBLE_EQ(w.lhs, std::abs(x * x - y * y));
    EXPECT_DOUBLE_EQ(w.rhs, 0.5 * std::abs(x - y));
    EXPECT_GT(w.lhs, w.rhs);
  }
  // The hand-picked pair x = 3, y = 2: |9 - 4| = 5 against 1/2.
  const auto F = CClassFn::scaled(0.5);
  EXPECT_GT(std::abs(9.0 - 4.0), F(1.0, 1.0));
}

TEST(ConditionII, ZeroKernelPasses) {
  auto p = scalar_problem([](double t) { return t; }, [](double, double) { return 0.0; }, 10);
  p.hypothesis = identity_gauges();
  EXPECT_TRUE(check_condition_ii(p, 100).passed());
}

TEST(ConditionII, SeedReproducible) {
  auto p = scalar_problem([](double) { return 0.0; }, [](double, double x) { return x * x; }, 10);
  p.hypothesis = identity_gauges();
  const SamplingOptions a{.box_lo = -3, .box_hi = 3, .seed = 123};
  const auto v1 = check_condition_ii(p, 300, a);
  const auto v2 = check_condition_ii(p, 300, a);
  ASSERT_EQ(v1.violations.size(), v2.violations.size());
  for (std::size_t i = 0; i < v1.violations.size(); ++i) {
    EXPECT_EQ(v1.violations[i].point, v2.violations[i].point);
  }
  EXPECT_EQ(v1.note, v2.note);

  SamplingOptions b = a;
  b.seed = 124;
  const auto v3 = check_condition_ii(p, 300, b);
  EXPECT_NE(v1.violations.front().point, v3.violations.front().point);
}

TEST(ConditionII, NeedsHypothesisAndSamples) {
  auto p = scalar_problem([](double) { return 0.0; }, [](double, double x) { return x; }, 10);
  EXPECT_THROW(check_condition_ii(p, 10), Error);
  p.hypothesis = identity_gauges();
  EXPECT_THROW(check_condition_ii(p, 0), Error);
  EXPECT_THROW(check_condition_ii(p, 10, {.box_lo = 1, .box_hi = 1}), Error);
}

TEST(SupNormGauge, ListedExamples) {
  const auto G = IntegralGauge::identity();
  std::vector<double> zero(11, 0.0), t(11), half(11);
  for (std::size_t j = 0; j <= 10; ++j) {
    t[j] = j / 10.0;
    half[j] = t[j] / 2.0;
  }

  EXPECT_TRUE(supnorm_gauge_lemma_check(zero, t, 1.0, G).passed());

  const auto ok = supnorm_gauge_lemma_check(half, t, 1.0, G);
  EXPECT_TRUE(ok.passed());
  EXPECT_EQ(ok.status, PropertyVerdict::Status::Pass);

  const auto bad = supnorm_gauge_lemma_check(t, half, 1.0, G);
  EXPECT_EQ(bad.status, PropertyVerdict::Status::PremiseNotEstablished);
  EXPECT_EQ(bad.violations.size(), 10u);  // every node but t = 0
}

TEST(SupNormGauge, NonLinearGaugeAndErrors) {
  const auto G = IntegralGauge::power_self();
  const std::vector<double> a = {0.0, 0.5, 1.0};
  const std::vector<double> b = {0.0, 0.9, 1.5};
  EXPECT_TRUE(supnorm_gauge_lemma_check(a, b, 1.0, G).passed());
  EXPECT_THROW(supnorm_gauge_lemma_check(a, std::vector<double>{1.0}, 1.0, G), Error);
  EXPECT_THROW(supnorm_gauge_lemma_check(a, b, 0.0, G), Error);
}
