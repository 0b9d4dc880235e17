#include "fplab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace fplab {

const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::Banach:
      return "banach";
    case Theorem::Branciari:
      return "branciari";
    case Theorem::Suzuki:
      return "suzuki";
    case Theorem::IntegralSuzuki:
      return "integral-suzuki";
    case Theorem::CClassIntegralSuzuki:
      return "cclass-integral-suzuki";
  }
  return "unknown";
}

Theorem theorem_from_string(const std::string& name) {
  for (Theorem t : {Theorem::Banach, Theorem::Branciari, Theorem::Suzuki,
                    Theorem::IntegralSuzuki, Theorem::CClassIntegralSuzuki}) {
    if (name == to_string(t)) return t;
  }
  throw Error("unknown theorem '" + name + "'");
}

Alpha Alpha::rational(std::int64_t num, std::int64_t den) {
  if (num <= 0 || den <= 0 || 2 * num > den) {
    std::ostringstream os;
    os << "alpha " << num << "/" << den << " outside (0, 1/2]";
    throw Error(os.str());
  }
  const std::int64_t g = std::gcd(num, den);
  Alpha a(static_cast<double>(num) / static_cast<double>(den));
  a.ratio_ = std::make_pair(num / g, den / g);
  return a;
}

Alpha Alpha::real(double value) {
  if (!(value > 0.0 && value <= 0.5)) {
    std::ostringstream os;
    os << "alpha " << value << " outside (0, 1/2]";
    throw Error(os.str());
  }
  return Alpha(value);
}

namespace {

void require_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    std::ostringstream os;
    os << "beta " << beta << " outside (0,1)";
    throw Error(os.str());
  }
}

void require_tol(double tol) {
  if (!(tol >= 0.0)) throw Error("comparison tolerance must be >= 0");
}

struct Comparison {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = true;
  bool overflow = false;
  bool log_scale = false;
  std::optional<double> ratio;  // feeds min_feasible_beta
};

using Condition = std::function<Comparison(double dxy, double dtxty)>;

struct Premise {
  const Alpha* alpha = nullptr;  // null: every pair active
  bool exact = false;
  double tol = 0.0;

  // {holds, lhs, rhs}
  std::tuple<bool, double, double> operator()(double dx_tx, double dxy) const {
    if (!alpha) return {true, 0.0, dxy};
    const double lhs = alpha->value() * dx_tx;
    if (exact) {
      const auto [num, den] = *alpha->ratio();
      const auto l = static_cast<__int128>(num) * static_cast<__int128>(dx_tx);
      const auto r = static_cast<__int128>(den) * static_cast<__int128>(dxy);
      return {l <= r, lhs, dxy};
    }
    return {lhs <= dxy + tol, lhs, dxy};
  }
};

bool log_le(double lhs, double rhs) { return lhs <= rhs + kLogRelTol * std::abs(rhs); }

// Row-parallel sweep over ordered pairs x != y. Partial results are kept per
// row and concatenated in row order, so output is schedule-independent.
VerificationReport sweep(const FiniteMetricSpace& space, const SelfMap& map, Theorem theorem,
                         const Premise& premise, const Condition& condition,
                         bool track_beta) {
  require_self_map(space, map);
  const std::size_t n = space.size();

  struct Row {
    std::vector<PairViolation> violations;
    std::size_t active = 0;
    std::size_t vacuous = 0;
    double max_ratio = 0.0;
  };
  std::vector<Row> rows(n);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t xi = 0; xi < static_cast<std::ptrdiff_t>(n); ++xi) {
    const auto x = static_cast<std::size_t>(xi);
    Row& row = rows[x];
    const std::size_t tx = map(x);
    const double dx_tx = space.distance(x, tx);
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      const double dxy = space.distance(x, y);
      const auto [active, plhs, prhs] = premise(dx_tx, dxy);
      if (!active) {
        ++row.vacuous;
        continue;
      }
      ++row.active;
      const Comparison c = condition(dxy, space.distance(tx, map(y)));
      if (c.ratio) row.max_ratio = std::max(row.max_ratio, *c.ratio);
      if (!c.ok) {
        row.violations.push_back({x, y, plhs, prhs, c.lhs, c.rhs,
                                  c.overflow ? "overflow" : "inequality", c.log_scale});
      }
    }
  }

  VerificationReport report;
  report.theorem = theorem;
  report.total_pairs = n > 0 ? n * (n - 1) : 0;
  double max_ratio = 0.0;
  for (auto& row : rows) {
    report.premise_active_pairs += row.active;
    report.vacuous_pairs += row.vacuous;
    max_ratio = std::max(max_ratio, row.max_ratio);
    std::move(row.violations.begin(), row.violations.end(),
              std::back_inserter(report.violations));
  }
  if (track_beta) report.min_feasible_beta = max_ratio;
  report.holds = report.violations.empty();
  return report;
}

Premise make_premise(const FiniteMetricSpace& space, const Alpha* alpha, double tol) {
  Premise p;
  p.alpha = alpha;
  p.tol = tol;
  p.exact = alpha && alpha->ratio() && space.integral_distances();
  return p;
}

Condition banach_condition(double beta, double tol) {
  return [beta, tol](double dxy, double dtxty) {
    Comparison c;
    c.lhs = dtxty;
    c.rhs = beta * dxy;
    c.ok = c.lhs <= c.rhs + tol;
    c.ratio = dtxty / dxy;
    return c;
  };
}

Comparison overflow(double lhs, double rhs) {
  Comparison c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.ok = false;
  c.overflow = true;
  return c;
}

Condition integral_condition(double beta, const IntegralGauge& gauge, double tol) {
  return [beta, &gauge, tol](double dxy, double dtxty) {
    const double gn = gauge(dtxty);
    const double gm = gauge(dxy);
    Comparison c;
    if (std::isfinite(gn) && std::isfinite(gm)) {
      c.lhs = gn;
      c.rhs = beta * gm;
      c.ok = c.lhs <= c.rhs + tol;
      c.ratio = gn / gm;
      return c;
    }
    const auto ln_gn = gauge.log(dtxty);
    const auto ln_gm = gauge.log(dxy);
    if (!ln_gm) return overflow(gn, beta * gm);
    c.log_scale = true;
    c.rhs = std::log(beta) + *ln_gm;
    if (!ln_gn) {  // d(Tx,Ty) = 0, G = 0
      c.lhs = -HUGE_VAL;
      c.ratio = 0.0;
      return c;
    }
    c.lhs = *ln_gn;
    c.ok = log_le(c.lhs, c.rhs);
    c.ratio = std::exp(*ln_gn - *ln_gm);
    return c;
  };
}

Condition cclass_condition(const CClassFn& F, const GaugePair& gp, const IntegralGauge& gauge,
                           double tol) {
  return [&F, &gp, &gauge, tol](double dxy, double dtxty) {
    const double gn = gauge(dtxty);
    const double gm = gauge(dxy);
    double lhs = HUGE_VAL;
    double rhs = HUGE_VAL;
    if (std::isfinite(gn) && std::isfinite(gm)) {
      lhs = gp.psi(gn);
      const double s = gp.psi(gm);
      rhs = F(s, gp.phi(gm));
      if (std::isfinite(lhs) && std::isfinite(rhs)) {
        Comparison c;
        c.lhs = lhs;
        c.rhs = rhs;
        c.ok = lhs <= rhs + tol;
        return c;
      }
    }
    // psi(G) <= c psi(G') with linear psi reduces to ln G <= ln c + ln G'.
    const auto slope = F.linear_slope();
    const auto ln_gm = gauge.log(dxy);
    if (slope && *slope > 0.0 && gp.psi_slope && ln_gm) {
      Comparison c;
      c.log_scale = true;
      c.rhs = std::log(*slope) + *ln_gm;
      const auto ln_gn = gauge.log(dtxty);
      c.lhs = ln_gn ? *ln_gn : -HUGE_VAL;
      c.ok = !ln_gn || log_le(c.lhs, c.rhs);
      return c;
    }
    return overflow(lhs, rhs);
  };
}

}  // namespace

const PairViolation* VerificationReport::find(std::size_t x, std::size_t y) const {
  for (const auto& v : violations) {
    if (v.x == x && v.y == y) return &v;
  }
  return nullptr;
}

VerificationReport check_banach(const FiniteMetricSpace& space, const SelfMap& map,
                                double beta, double tol) {
  require_beta(beta);
  require_tol(tol);
  return sweep(space, map, Theorem::Banach, make_premise(space, nullptr, tol),
               banach_condition(beta, tol), true);
}

VerificationReport check_branciari(const FiniteMetricSpace& space, const SelfMap& map,
                                   double beta, const IntegralGauge& gauge, double tol) {
  require_beta(beta);
  require_tol(tol);
  return sweep(space, map, Theorem::Branciari, make_premise(space, nullptr, tol),
               integral_condition(beta, gauge, tol), true);
}

VerificationReport check_suzuki(const FiniteMetricSpace& space, const SelfMap& map,
                                const Alpha& alpha, double beta, double tol) {
  require_beta(beta);
  require_tol(tol);
  return sweep(space, map, Theorem::Suzuki, make_premise(space, &alpha, tol),
               banach_condition(beta, tol), true);
}

VerificationReport check_integral_suzuki(const FiniteMetricSpace& space, const SelfMap& map,
                                         const Alpha& alpha, double beta,
                                         const IntegralGauge& gauge, double tol) {
  require_beta(beta);
  require_tol(tol);
  return sweep(space, map, Theorem::IntegralSuzuki, make_premise(space, &alpha, tol),
               integral_condition(beta, gauge, tol), true);
}

VerificationReport check_cclass_integral_suzuki(const FiniteMetricSpace& space,
                                                const SelfMap& map, const Alpha& alpha,
                                                const CClassFn& F, const GaugePair& gp,
                                                const IntegralGauge& gauge, double tol) {
  require_tol(tol);
  if (!gp.psi || !gp.phi) throw Error("gauge pair is missing psi or phi");
  return sweep(space, map, Theorem::CClassIntegralSuzuki, make_premise(space, &alpha, tol),
               cclass_condition(F, gp, gauge, tol), false);
}

void HypothesisSpec::validate() const {
  require_tol(tol);
  const bool suzuki_type = theorem == Theorem::Suzuki || theorem == Theorem::IntegralSuzuki ||
                           theorem == Theorem::CClassIntegralSuzuki;
  const bool integral_type = theorem == Theorem::Branciari ||
                             theorem == Theorem::IntegralSuzuki ||
                             theorem == Theorem::CClassIntegralSuzuki;
  const std::string name = to_string(theorem);
  if (suzuki_type && !alpha) throw Error(name + " needs alpha");
  if (integral_type && !gauge) throw Error(name + " needs an integral gauge");
  if (theorem == Theorem::CClassIntegralSuzuki) {
    if (!F) throw Error(name + " needs a C-class function F");
    if (!gp) throw Error(name + " needs a gauge pair");
  } else {
    if (!beta) throw Error(name + " needs beta");
    require_beta(*beta);
  }
}

VerificationReport check(const FiniteMetricSpace& space, const SelfMap& map,
                         const HypothesisSpec& spec) {
  spec.validate();
  switch (spec.theorem) {
    case Theorem::Banach:
      return check_banach(space, map, *spec.beta, spec.tol);
    case Theorem::Branciari:
      return check_branciari(space, map, *spec.beta, *spec.gauge, spec.tol);
    case Theorem::Suzuki:
      return check_suzuki(space, map, *spec.alpha, *spec.beta, spec.tol);
    case Theorem::IntegralSuzuki:
      return check_integral_suzuki(space, map, *spec.alpha, *spec.beta, *spec.gauge, spec.tol);
    case Theorem::CClassIntegralSuzuki:
      return check_cclass_integral_suzuki(space, map, *spec.alpha, *spec.F, *spec.gp,
                                          *spec.gauge, spec.tol);
  }
  throw Error("unhandled theorem");
}

ClassificationSummary classify(const FiniteMetricSpace& space, const SelfMap& map,
                               std::span<const HypothesisSpec> specs) {
  require_self_map(space, map);
  ClassificationSummary summary;
  for (const auto& spec : specs) summary.reports.push_back(check(space, map, spec));

  const std::size_t n = space.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const double r = space.distance(map(x), map(y)) / space.distance(x, y);
      if (r > summary.sup_ratio) {
        summary.sup_ratio = r;
        summary.sup_ratio_pair = std::make_pair(x, y);
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = space.point(i).coords;
    if (!c || (*c)[1] != (*c)[0] + 1 || (*c)[0] < 13) continue;
    const std::int64_t k = (*c)[0] - 12;
    const auto j = space.find(Coords{k, 0});
    if (!j) continue;
    FamilyRatio fr;
    fr.n = k;
    fr.numerator = space.distance(map(i), map(*j));
    fr.denominator = space.distance(i, *j);
    fr.ratio = fr.numerator / fr.denominator;
    summary.family_ratios.push_back(fr);
  }
  std::sort(summary.family_ratios.begin(), summary.family_ratios.end(),
            [](const FamilyRatio& a, const FamilyRatio& b) { return a.n < b.n; });
  return summary;
}

}  // namespace fplab
