#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fplab/gauges.hpp"
#include "fplab/reference.hpp"

using namespace fplab;

namespace {

bool has_witness_near(const PropertyVerdict& v, double s, double t, const std::string& kind) {
  for (const auto& w : v.violations) {
    if (w.kind == kind && std::abs(w.point[0] - s) < 1e-9 && std::abs(w.point[1] - t) < 1e-9) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST(Catalog, ListedValues) {
  EXPECT_DOUBLE_EQ(catalog_cclass(1)(3.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(catalog_cclass(2, {{"m", 0.5}})(0.0, 7.0), 0.0);
  EXPECT_DOUBLE_EQ(catalog_cclass(16, {{"r", 1.0}})(1.0, 5.0), 0.5);
}

TEST(Catalog, AxisIdentityWhereTheFormulaGivesIt) {
  // F(s,0) = s for the items whose second argument enters as a penalty.
  for (int id : {1, 3, 4, 6, 7, 8, 10, 12, 13, 17}) {
    const CClassFn F = catalog_cclass(id);
    for (double s : {0.5, 2.0, 7.25}) {
      EXPECT_NEAR(F(s, 0.0), s, 1e-11) << "item " << id << " at s=" << s;
    }
  }
}

TEST(Catalog, GammaWeightedItemMatchesHighPrecisionQuadrature) {
  // Reference weights (1/sqrt(pi)) int_0^inf e^{-x}/(sqrt(x)+t) dx from 30-digit quadrature.
  const CClassFn F = catalog_cclass(17);
  EXPECT_NEAR(F(1.0, 0.5), 0.45636922417206467, 1e-11);
  EXPECT_NEAR(F(1.0, 1.0), 0.31717979320681070, 1e-11);
  EXPECT_NEAR(F(2.0, 3.0), 2.0 * 0.14716539563409340, 1e-11);
}

TEST(Catalog, RejectsUnknownIdsAndParameters) {
  EXPECT_THROW(catalog_cclass(0), Error);
  EXPECT_THROW(catalog_cclass(18), Error);
  EXPECT_THROW(catalog_cclass(99), Error);
  EXPECT_THROW(catalog_cclass(1, {{"m", 0.5}}), Error);
  EXPECT_THROW(catalog_cclass(2, {{"m", 1.0}}), Error);
  EXPECT_THROW(catalog_cclass(2, {{"m", 0.0}}), Error);
  EXPECT_THROW(catalog_cclass(3, {{"r", -1.0}}), Error);
  EXPECT_THROW(catalog_cclass(4, {{"a", 1.0}}), Error);
  EXPECT_THROW(catalog_cclass(5, {{"a", 3.0}}), Error);
  EXPECT_THROW(catalog_cclass(6, {{"l", 1.0}}), Error);
  EXPECT_THROW(catalog_cclass(7, {{"a", 0.5}}), Error);
  EXPECT_THROW(catalog_cclass(10, {{"k", 0.0}}), Error);
  EXPECT_THROW(catalog_cclass(14, {{"n", 2.5}}), Error);
  EXPECT_THROW(catalog_cclass(16, {{"r", 0.0}}), Error);
  EXPECT_NO_THROW(catalog_cclass(5, {{"a", 2.7}}));
}

TEST(VerifyCClass, SubtractionItemPasses) {
  const PropertyVerdict v = verify_cclass(catalog_cclass(1));
  EXPECT_TRUE(v.passed());
  EXPECT_EQ(v.samples, 10000u);
}

TEST(VerifyCClass, SumIsRejectedWithWitness) {
  const CClassFn broken = CClassFn::custom([](double s, double t) { return s + t; }, "s + t");
  CClassGrid grid;
  grid.s_points = grid.t_points = 101;  // step 0.1, so (1,1) is a node
  const PropertyVerdict v = verify_cclass(broken, grid);
  EXPECT_FALSE(v.passed());
  EXPECT_TRUE(has_witness_near(v, 1.0, 1.0, "upper-bound"));
}

TEST(VerifyCClass, ScaledByReciprocalPasses) {
  CClassCallables c;
  c.beta = [](double s) { return 1.0 / (1.0 + s); };
  EXPECT_TRUE(verify_cclass(catalog_cclass(9, {}, c)).passed());
}

TEST(VerifyCClass, DefaultCatalogOutsideItemsFourAndFive) {
  for (int id = 1; id <= kCatalogSize; ++id) {
    if (id == 4 || id == 5) continue;
    const PropertyVerdict v = verify_cclass(catalog_cclass(id));
    EXPECT_TRUE(v.passed()) << "item " << id << " first violation kind "
                            << (v.violations.empty() ? "" : v.violations[0].kind);
  }
}

TEST(VerifyCClass, ItemsFourAndFiveExceedSAtTheOrigin) {
  // F4(0,t) = log_a(1+t)/(1+t) > 0 and F5(0,t) = ln(2)/2 > 0.
  const PropertyVerdict v4 = verify_cclass(catalog_cclass(4));
  EXPECT_FALSE(v4.passed());
  EXPECT_TRUE(has_witness_near(v4, 0.0, 10.0, "upper-bound"));
  EXPECT_NEAR(catalog_cclass(4)(0.0, 10.0), std::log2(11.0) / 11.0, 1e-15);

  const PropertyVerdict v5 = verify_cclass(catalog_cclass(5));
  EXPECT_FALSE(v5.passed());
  EXPECT_TRUE(has_witness_near(v5, 0.0, 0.0, "upper-bound"));
  EXPECT_NEAR(catalog_cclass(5)(0.0, 0.0), std::log(2.0) / 2.0, 1e-15);
}

TEST(VerifyCClass, EqualityOffTheAxesIsFlagged) {
  CClassCallables c;
  c.h = [](double, double) { return 1.0; };  // F = s everywhere
  const PropertyVerdict v = verify_cclass(catalog_cclass(12, {}, c));
  EXPECT_FALSE(v.passed());
  for (const auto& w : v.violations) {
    EXPECT_EQ(w.kind, "equality");
    EXPECT_GT(w.point[0], 0.0);
    EXPECT_GT(w.point[1], 0.0);
  }
}

TEST(VerifyCClass, NonFiniteValuesAreViolations) {
  const CClassFn F = CClassFn::custom([](double s, double t) { return t > 5 ? NAN : s - t; }, "nan");
  const PropertyVerdict v = verify_cclass(F);
  ASSERT_FALSE(v.passed());
  EXPECT_EQ(v.violations.front().kind, "non-finite");
}

TEST(VerifyCClass, ParallelSweepMatchesSerialReference) {
  CClassGrid grid;
  grid.s_points = 37;
  grid.t_points = 53;
  for (int id = 1; id <= kCatalogSize; ++id) {
    const CClassFn F = catalog_cclass(id);
    const PropertyVerdict par = verify_cclass(F, grid);
    const PropertyVerdict ser = reference::verify_cclass(F, grid);
    ASSERT_EQ(par.violations.size(), ser.violations.size()) << "item " << id;
    for (std::size_t i = 0; i < par.violations.size(); ++i) {
      EXPECT_EQ(par.violations[i].point, ser.violations[i].point);
      EXPECT_EQ(par.violations[i].kind, ser.violations[i].kind);
    }
  }
}

TEST(VerifyCClass, UpperBoundHoldsAtRandomPoints) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int id = 1; id <= kCatalogSize; ++id) {
    if (id == 4 || id == 5) continue;
    const CClassFn F = catalog_cclass(id);
    for (int k = 0; k < 200; ++k) {
      const double s = u(rng);
      const double t = u(rng);
      EXPECT_LE(F(s, t), s + kCClassTol) << "item " << id << " at (" << s << "," << t << ")";
    }
  }
}

TEST(GaugePairCheck, ListedExamples) {
  const std::vector<double> grid = {0.0, 0.2, 0.8, 1.0, 1.5, 3.0};
  EXPECT_TRUE(verify_gauge_pair(GaugePair::linear(2.0, 1.0), grid).passed());

  GaugePair zero_phi{[](double t) { return t * t; }, [](double) { return 0.0; }, "t^2, 0", {}};
  const PropertyVerdict v = verify_gauge_pair(zero_phi, grid);
  EXPECT_FALSE(v.passed());
  bool phi_at_one = false;
  for (const auto& w : v.violations) phi_at_one |= w.kind == "phi-positive" && w.point[0] == 1.0;
  EXPECT_TRUE(phi_at_one);

  GaugePair floor_psi{[](double t) { return std::floor(t); }, [](double t) { return t; }, "", {}};
  const PropertyVerdict f = verify_gauge_pair(floor_psi, grid);
  EXPECT_FALSE(f.passed());
  bool flat = false;
  for (const auto& w : f.violations) {
    flat |= w.kind == "psi-monotone" && w.point[0] == 0.2 && w.point[1] == 0.8;
  }
  EXPECT_TRUE(flat);
}

TEST(GaugePairCheck, PsiMustVanishAtZero) {
  GaugePair shifted{[](double t) { return t + 1.0; }, [](double t) { return t; }, "", {}};
  const std::vector<double> grid = {0.0, 1.0};
  const PropertyVerdict v = verify_gauge_pair(shifted, grid);
  ASSERT_FALSE(v.passed());
  EXPECT_EQ(v.violations.front().kind, "psi-zero");
  const std::vector<double> bad = {0.0, 1.0, 1.0};
  EXPECT_THROW(verify_gauge_pair(shifted, bad), Error);
  EXPECT_THROW(GaugePair::linear(0.0, 1.0), Error);
}

TEST(IntegralGaugeTest, UnitIntegrand) {
  const IntegralGauge g = make_integral_gauge(
      IntegralGauge::QuadratureSpec{[](double) { return 1.0; }, "one", 1e-12});
  EXPECT_EQ(g.kind(), IntegralGauge::Kind::Quadrature);
  EXPECT_NEAR(g(2.5), 2.5, 1e-12);
  EXPECT_EQ(g(0.0), 0.0);
}

TEST(IntegralGaugeTest, PowerSelfClosedForm) {
  const IntegralGauge g = IntegralGauge::power_self();
  EXPECT_EQ(g(3.0), 27.0);
  EXPECT_EQ(g(9.0), 387420489.0);
  EXPECT_EQ(g(0.0), 0.0);
  EXPECT_NEAR(*g.log(3.0), 3.0 * std::log(3.0), 1e-15);
  EXPECT_FALSE(g.log(0.0).has_value());
}

TEST(IntegralGaugeTest, LinearIntegrandAgainstAntiderivative) {
  const double tol = 1e-10;
  const IntegralGauge g = make_integral_gauge(
      IntegralGauge::QuadratureSpec{[](double t) { return 2.0 * t; }, "2t", tol});
  auto antiderivative = [](double x) { return x * x; };
  EXPECT_NEAR(g(4.0), 16.0, tol);
  for (double x : {0.1, 0.7, 1.3, 5.5, 12.0}) EXPECT_NEAR(g(x), antiderivative(x), tol);
}

TEST(IntegralGaugeTest, StrictlyIncreasingForPositiveIntegrand) {
  const IntegralGauge g = make_integral_gauge(
      IntegralGauge::QuadratureSpec{[](double t) { return std::exp(-t) + 0.01; }, "decay", 1e-12});
  double prev = g(0.0);
  for (int k = 1; k <= 200; ++k) {
    const double cur = g(0.05 * k);
    EXPECT_GT(cur, prev);
    prev = cur;
  }
  // exp(-t) + 0.01 integrates to 1 - exp(-x) + 0.01 x.
  EXPECT_NEAR(g(3.0), 1.0 - std::exp(-3.0) + 0.03, 1e-12);
}

TEST(IntegralGaugeTest, Errors) {
  const IntegralGauge nan_after_one = make_integral_gauge(IntegralGauge::QuadratureSpec{
      [](double t) { return t > 1.0 ? NAN : 1.0; }, "nan", 1e-10});
  EXPECT_NO_THROW(nan_after_one(0.5));
  EXPECT_THROW(nan_after_one(2.0), Error);
  EXPECT_THROW(IntegralGauge::identity()(-1.0), Error);

  // Integrable singularity, far too few bisections for the requested accuracy.
  const IntegralGauge stiff = make_integral_gauge(IntegralGauge::QuadratureSpec{
      [](double t) { return 1.0 / std::sqrt(t); }, "rsqrt", 1e-14, 2});
  EXPECT_THROW(stiff(1.0), Error);
  EXPECT_THROW(make_integral_gauge(IntegralGauge::QuadratureSpec{{}, "none", 1e-10}), Error);
}

TEST(IntegralGaugeTest, CacheIsSharedAcrossCopies) {
  int calls = 0;
  const IntegralGauge g = make_integral_gauge(IntegralGauge::QuadratureSpec{
      [&calls](double) {
        ++calls;
        return 1.0;
      },
      "count", 1e-12});
  g(1.5);
  const int first = calls;
  const IntegralGauge copy = g;
  EXPECT_NEAR(copy(1.5), 1.5, 1e-12);
  EXPECT_EQ(calls, first);
}
