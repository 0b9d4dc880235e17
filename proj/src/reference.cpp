#include "fplab/reference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace fplab::reference {

namespace {

// lhs(k): left side at k = d(Tx,Ty); rhs(m): right side at m = d(x,y);
// base(m): rhs without beta, used for the feasible-beta ratio.
VerificationReport scan(const FiniteMetricSpace& space, const SelfMap& map, Theorem theorem,
                        double alpha, double tol, const std::function<double(double)>& lhs,
                        const std::function<double(double)>& rhs,
                        const std::function<double(double)>& base) {
  require_self_map(space, map);
  VerificationReport r;
  r.theorem = theorem;
  const std::size_t n = space.size();
  double max_ratio = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      ++r.total_pairs;
      const double m = space.distance(x, y);
      const double premise_lhs = alpha * space.distance(x, map(x));
      if (premise_lhs > m + tol) {
        ++r.vacuous_pairs;
        continue;
      }
      ++r.premise_active_pairs;
      const double k = space.distance(map(x), map(y));
      const double l = lhs(k);
      const double rr = rhs(m);
      if (base) max_ratio = std::max(max_ratio, l / base(m));
      if (!(l <= rr + tol)) {
        r.violations.push_back({x, y, premise_lhs, m, l, rr, "inequality", false});
      }
    }
  }
  if (base) r.min_feasible_beta = max_ratio;
  r.holds = r.violations.empty();
  return r;
}

}  // namespace

VerificationReport check_banach(const FiniteMetricSpace& space, const SelfMap& map,
                                double beta, double tol) {
  auto id = [](double d) { return d; };
  return scan(space, map, Theorem::Banach, 0.0, tol, id, [beta](double m) { return beta * m; },
              id);
}

VerificationReport check_branciari(const FiniteMetricSpace& space, const SelfMap& map,
                                   double beta, const IntegralGauge& gauge, double tol) {
  auto G = [&gauge](double d) { return gauge(d); };
  return scan(space, map, Theorem::Branciari, 0.0, tol, G,
              [&gauge, beta](double m) { return beta * gauge(m); }, G);
}

VerificationReport check_suzuki(const FiniteMetricSpace& space, const SelfMap& map,
                                double alpha, double beta, double tol) {
  auto id = [](double d) { return d; };
  return scan(space, map, Theorem::Suzuki, alpha, tol, id,
              [beta](double m) { return beta * m; }, id);
}

VerificationReport check_integral_suzuki(const FiniteMetricSpace& space, const SelfMap& map,
                                         double alpha, double beta,
                                         const IntegralGauge& gauge, double tol) {
  auto G = [&gauge](double d) { return gauge(d); };
  return scan(space, map, Theorem::IntegralSuzuki, alpha, tol, G,
              [&gauge, beta](double m) { return beta * gauge(m); }, G);
}

VerificationReport check_cclass_integral_suzuki(const FiniteMetricSpace& space,
                                                const SelfMap& map, double alpha,
                                                const CClassFn& F, const GaugePair& gp,
                                                const IntegralGauge& gauge, double tol) {
  return scan(
      space, map, Theorem::CClassIntegralSuzuki, alpha, tol,
      [&](double k) { return gp.psi(gauge(k)); },
      [&](double m) {
        const double g = gauge(m);
        return F(gp.psi(g), gp.phi(g));
      },
      {});
}

PropertyVerdict verify_cclass(const CClassFn& F, const CClassGrid& grid,
                              const CClassCheckOptions& opts) {
  PropertyVerdict v;
  const double ds = grid.s_max / static_cast<double>(grid.s_points - 1);
  const double dt = grid.t_max / static_cast<double>(grid.t_points - 1);
  for (std::size_t i = 0; i < grid.s_points; ++i) {
    for (std::size_t j = 0; j < grid.t_points; ++j) {
      const double s = static_cast<double>(i) * ds;
      const double t = static_cast<double>(j) * dt;
      const double f = F(s, t);
      ++v.samples;
      if (!std::isfinite(f)) {
        v.add({{s, t}, f, s, "non-finite"});
      } else if (f > s + opts.tol) {
        v.add({{s, t}, f, s, "upper-bound"});
      } else if (std::abs(f - s) <= opts.equality_band && s > opts.tol && t > opts.tol) {
        v.add({{s, t}, f, s, "equality"});
      }
    }
  }
  return v;
}

}  // namespace fplab::reference
