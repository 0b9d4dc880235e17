#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fplab/gauges.hpp"
#include "fplab/metric.hpp"

namespace fplab {

/// Absolute slack on comparisons after gauge/psi application.
inline constexpr double kPairTol = 1e-9;
/// Relative slack on log-space comparisons.
inline constexpr double kLogRelTol = 1e-12;

enum class Theorem { Banach, Branciari, Suzuki, IntegralSuzuki, CClassIntegralSuzuki };

const char* to_string(Theorem t);
Theorem theorem_from_string(const std::string& name);

/// Suzuki premise coefficient in (0, 1/2]. A rational alpha is compared
/// exactly against integer distances.
class Alpha {
 public:
  static Alpha rational(std::int64_t num, std::int64_t den);
  static Alpha real(double value);

  double value() const { return value_; }
  std::optional<std::pair<std::int64_t, std::int64_t>> ratio() const { return ratio_; }

 private:
  explicit Alpha(double v) : value_(v) {}
  double value_;
  std::optional<std::pair<std::int64_t, std::int64_t>> ratio_;
};

struct HypothesisSpec {
  Theorem theorem = Theorem::Banach;
  std::optional<Alpha> alpha;         // Suzuki-type
  std::optional<double> beta;         // beta-type
  std::optional<IntegralGauge> gauge; // integral-type
  std::optional<CClassFn> F;          // C-class
  std::optional<GaugePair> gp;        // C-class
  double tol = kPairTol;

  /// Throws fplab::Error if a field the theorem needs is missing or out of range.
  void validate() const;
};

struct PairViolation {
  std::size_t x = 0;
  std::size_t y = 0;
  double premise_lhs = 0.0;
  double premise_rhs = 0.0;
  double cond_lhs = 0.0;
  double cond_rhs = 0.0;
  std::string kind;        // "inequality" or "overflow"
  bool log_scale = false;  // cond sides are natural logs
};

struct VerificationReport {
  Theorem theorem = Theorem::Banach;
  std::size_t total_pairs = 0;
  std::size_t premise_active_pairs = 0;
  std::size_t vacuous_pairs = 0;
  std::vector<PairViolation> violations;  // sorted by (x, y)
  std::optional<double> min_feasible_beta;
  bool holds = true;

  const PairViolation* find(std::size_t x, std::size_t y) const;
};

VerificationReport check_banach(const FiniteMetricSpace& space, const SelfMap& map,
                                double beta, double tol = kPairTol);

VerificationReport check_branciari(const FiniteMetricSpace& space, const SelfMap& map,
                                   double beta, const IntegralGauge& gauge,
                                   double tol = kPairTol);

VerificationReport check_suzuki(const FiniteMetricSpace& space, const SelfMap& map,
                                const Alpha& alpha, double beta, double tol = kPairTol);

VerificationReport check_integral_suzuki(const FiniteMetricSpace& space, const SelfMap& map,
                                         const Alpha& alpha, double beta,
                                         const IntegralGauge& gauge, double tol = kPairTol);

/// psi(G(d(Tx,Ty))) <= F(psi(G(d(x,y))), phi(G(d(x,y)))) on every pair with
/// alpha d(x,Tx) <= d(x,y).
VerificationReport check_cclass_integral_suzuki(const FiniteMetricSpace& space,
                                                const SelfMap& map, const Alpha& alpha,
                                                const CClassFn& F, const GaugePair& gp,
                                                const IntegralGauge& gauge,
                                                double tol = kPairTol);

VerificationReport check(const FiniteMetricSpace& space, const SelfMap& map,
                         const HypothesisSpec& spec);

/// d(Tx,Ty)/d(x,y) along x = (n+12,n+13), y = (n,0).
struct FamilyRatio {
  std::int64_t n = 0;
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
};

struct ClassificationSummary {
  std::vector<VerificationReport> reports;
  double sup_ratio = 0.0;  // max over x != y of d(Tx,Ty)/d(x,y)
  std::optional<std::pair<std::size_t, std::size_t>> sup_ratio_pair;
  std::vector<FamilyRatio> family_ratios;  // empty without coordinates
};

ClassificationSummary classify(const FiniteMetricSpace& space, const SelfMap& map,
                               std::span<const HypothesisSpec> specs);

}  // namespace fplab
