#include "fplab/gauges.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "fplab/quadrature.hpp"

namespace fplab {

CClassFn::CClassFn(int id, ParamMap params, Eval eval, std::string formula,
                   std::optional<double> linear_slope)
    : id_(id),
      params_(std::move(params)),
      eval_(std::move(eval)),
      formula_(std::move(formula)),
      linear_slope_(linear_slope) {
  if (!eval_) throw Error("C-class function needs an evaluator");
}

CClassFn CClassFn::custom(Eval eval, std::string formula) {
  return CClassFn(0, {}, std::move(eval), std::move(formula));
}

CClassFn CClassFn::scaled(double slope) {
  return CClassFn(2, {{"m", slope}}, [slope](double s, double) { return slope * s; },
                  "m*s", slope);
}

namespace {

// Integral weight of item 17: (1/sqrt(pi)) int_0^inf e^{-x} / (sqrt(x) + t) dx.
// With x = u^2 and 2u/(u+t) = 2 - 2t/(u+t) this is
//   1 - (2t/sqrt(pi)) int_0^U e^{-u^2} / (u + t) du,
// exact at t = 0. The integrand varies on scale t near the origin, so the
// range is cut geometrically from t outwards. The dropped tail is below e^{-U^2}.
double gamma_weight(double t) {
  if (t == 0.0) return 1.0;
  constexpr double kUpper = 6.0;
  auto integrand = [t](double u) { return std::exp(-u * u) / (u + t); };
  double sum = 0.0;
  double lo = 0.0;
  double hi = std::min(t, kUpper);
  while (lo < kUpper) {
    sum += integrate(integrand, lo, hi, 1e-13, 15).value;
    lo = hi;
    hi = std::min(4.0 * hi, kUpper);
  }
  return 1.0 - 2.0 * t * sum / std::sqrt(std::numbers::pi);
}

class ParamReader {
 public:
  ParamReader(int id, const ParamMap& given) : id_(id), params_(default_params(id)) {
    for (const auto& [key, value] : given) {
      auto it = params_.find(key);
      if (it == params_.end()) {
        std::ostringstream os;
        os << "catalog item " << id << " has no parameter '" << key << "'";
        throw Error(os.str());
      }
      it->second = value;
    }
  }

  double get(const std::string& key) const { return params_.at(key); }

  void require(const std::string& key, bool ok, const char* range) const {
    if (!ok || !std::isfinite(get(key))) {
      std::ostringstream os;
      os << "catalog item " << id_ << ": parameter " << key << "=" << get(key)
         << " outside " << range;
      throw Error(os.str());
    }
  }

  const ParamMap& all() const { return params_; }

 private:
  int id_;
  ParamMap params_;
};

}  // namespace

ParamMap default_params(int id) {
  switch (id) {
    case 2:
      return {{"m", 0.5}};
    case 3:
      return {{"r", 1.0}};
    case 4:
      return {{"a", 2.0}};
    case 5:
      return {{"a", 2.0}};
    case 6:
      return {{"l", 2.0}, {"r", 1.0}};
    case 7:
      return {{"a", 2.0}};
    case 10:
      return {{"k", 1.0}};
    case 14:
      return {{"n", 2.0}};
    case 16:
      return {{"r", 1.0}};
    default:
      if (id < 1 || id > kCatalogSize) {
        std::ostringstream os;
        os << "unknown C-class catalog id " << id;
        throw Error(os.str());
      }
      return {};
  }
}

CClassFn catalog_cclass(int id, const ParamMap& params, const CClassCallables& callables) {
  const ParamReader p(id, params);
  const ParamMap& bound = p.all();

  switch (id) {
    case 1:
      return {id, bound, [](double s, double t) { return s - t; }, "s - t"};
    case 2: {
      const double m = p.get("m");
      p.require("m", m > 0.0 && m < 1.0, "(0,1)");
      return {id, bound, [m](double s, double) { return m * s; }, "m*s", m};
    }
    case 3: {
      const double r = p.get("r");
      p.require("r", r > 0.0, "(0,inf)");
      return {id, bound, [r](double s, double t) { return s / std::pow(1.0 + t, r); },
              "s/(1+t)^r"};
    }
    case 4: {
      const double a = p.get("a");
      p.require("a", a > 1.0, "(1,inf)");
      const double log_a = std::log(a);
      return {id, bound,
              [a, log_a](double s, double t) {
                return std::log(t + std::pow(a, s)) / log_a / (1.0 + t);
              },
              "log_a(t+a^s)/(1+t)"};
    }
    case 5: {
      const double a = p.get("a");
      p.require("a", a > 1.0 && a < std::numbers::e, "(1,e)");
      return {id, bound, [a](double s, double) { return std::log1p(std::pow(a, s)) / 2.0; },
              "ln(1+a^s)/2"};
    }
    case 6: {
      const double l = p.get("l");
      const double r = p.get("r");
      p.require("l", l > 1.0, "(1,inf)");
      p.require("r", r > 0.0, "(0,inf)");
      return {id, bound,
              [l, r](double s, double t) {
                return std::pow(s + l, 1.0 / std::pow(1.0 + t, r)) - l;
              },
              "(s+l)^(1/(1+t)^r) - l"};
    }
    case 7: {
      const double a = p.get("a");
      p.require("a", a > 1.0, "(1,inf)");
      const double log_a = std::log(a);
      return {id, bound, [a, log_a](double s, double t) { return s * log_a / std::log(t + a); },
              "s*log_{t+a}(a)"};
    }
    case 8:
      return {id, bound,
              [](double s, double t) { return s - (1.0 + s) / (2.0 + s) * (t / (1.0 + t)); },
              "s - ((1+s)/(2+s))(t/(1+t))"};
    case 9: {
      auto beta = callables.beta ? callables.beta : [](double s) { return 1.0 / (1.0 + s); };
      return {id, bound, [beta](double s, double) { return s * beta(s); }, "s*beta(s)"};
    }
    case 10: {
      const double k = p.get("k");
      p.require("k", k > 0.0, "(0,inf)");
      return {id, bound, [k](double s, double t) { return s - t / (k + t); }, "s - t/(k+t)"};
    }
    case 11: {
      auto phi = callables.phi ? callables.phi : [](double s) { return s * s / (1.0 + s); };
      return {id, bound, [phi](double s, double) { return s - phi(s); }, "s - phi(s)"};
    }
    case 12: {
      auto h = callables.h ? callables.h : [](double s, double t) { return 1.0 / (1.0 + s * t); };
      return {id, bound, [h](double s, double t) { return s * h(s, t); }, "s*h(s,t)"};
    }
    case 13:
      return {id, bound, [](double s, double t) { return s - (2.0 + t) / (1.0 + t) * t; },
              "s - ((2+t)/(1+t))t"};
    case 14: {
      const double n = p.get("n");
      p.require("n", n >= 1.0 && std::floor(n) == n, "positive integers");
      return {id, bound,
              [n](double s, double) { return std::pow(std::log1p(std::pow(s, n)), 1.0 / n); },
              "(ln(1+s^n))^(1/n)"};
    }
    case 15: {
      auto upper = callables.upper ? callables.upper : [](double s) { return s / (1.0 + s); };
      return {id, bound, [upper](double s, double) { return upper(s); }, "phi(s)"};
    }
    case 16: {
      const double r = p.get("r");
      p.require("r", r > 0.0, "(0,inf)");
      return {id, bound, [r](double s, double) { return s / std::pow(1.0 + s, r); },
              "s/(1+s)^r"};
    }
    case 17:
      return {id, bound, [](double s, double t) { return s * gamma_weight(t); },
              "s/Gamma(1/2) int_0^inf e^-x/(sqrt(x)+t) dx"};
    default:
      break;
  }
  std::ostringstream os;
  os << "unknown C-class catalog id " << id;
  throw Error(os.str());
}

PropertyVerdict verify_cclass(const CClassFn& F, const CClassGrid& grid,
                              const CClassCheckOptions& opts) {
  if (grid.s_points < 2 || grid.t_points < 2 || !(grid.s_max > 0.0) || !(grid.t_max > 0.0)) {
    throw Error("C-class grid needs at least 2 points per axis and positive extents");
  }
  const std::size_t ns = grid.s_points;
  const std::size_t nt = grid.t_points;
  const std::size_t total = ns * nt;
  const double ds = grid.s_max / static_cast<double>(ns - 1);
  const double dt = grid.t_max / static_cast<double>(nt - 1);

  // Per-point outcome; gathered serially so the violation order is fixed.
  struct Outcome {
    double value = 0.0;
    char kind = 0;  // 0 ok, 'u' upper bound, 'e' equality, 'n' non-finite
  };
  std::vector<Outcome> outcomes(total);

#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(total); ++k) {
    const double s = static_cast<double>(static_cast<std::size_t>(k) / nt) * ds;
    const double t = static_cast<double>(static_cast<std::size_t>(k) % nt) * dt;
    Outcome& o = outcomes[k];
    o.value = F(s, t);
    if (!std::isfinite(o.value)) {
      o.kind = 'n';
    } else if (o.value > s + opts.tol) {
      o.kind = 'u';
    } else if (std::abs(o.value - s) <= opts.equality_band && s > opts.tol && t > opts.tol) {
      o.kind = 'e';
    }
  }

  PropertyVerdict verdict;
  verdict.samples = total;
  for (std::size_t k = 0; k < total; ++k) {
    const Outcome& o = outcomes[k];
    if (o.kind == 0) continue;
    const double s = static_cast<double>(k / nt) * ds;
    const double t = static_cast<double>(k % nt) * dt;
    const char* kind = o.kind == 'u' ? "upper-bound" : o.kind == 'e' ? "equality" : "non-finite";
    verdict.add({{s, t}, o.value, s, kind});
  }
  return verdict;
}

GaugePair GaugePair::linear(double A, double B) {
  if (!(A > 0.0) || !(B > 0.0)) throw Error("linear gauge pair needs A > 0 and B > 0");
  GaugePair gp;
  gp.psi = [A](double t) { return A * t; };
  gp.phi = [B](double t) { return B * t; };
  std::ostringstream os;
  os << "psi(t)=" << A << "t, phi(t)=" << B << "t";
  gp.label = os.str();
  gp.psi_slope = A;
  return gp;
}

PropertyVerdict verify_gauge_pair(const GaugePair& gp, std::span<const double> grid) {
  if (!gp.psi || !gp.phi) throw Error("gauge pair is missing psi or phi");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw Error("gauge grid must be nonnegative and strictly increasing");
    }
  }

  PropertyVerdict verdict;
  verdict.samples = grid.size();
  const double psi0 = gp.psi(0.0);
  if (psi0 != 0.0) verdict.add({{0.0}, psi0, 0.0, "psi-zero"});
  const double phi0 = gp.phi(0.0);
  if (!(phi0 >= 0.0)) verdict.add({{0.0}, phi0, 0.0, "phi-negative"});

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    if (t > 0.0) {
      const double phi = gp.phi(t);
      if (!(phi > 0.0)) verdict.add({{t}, phi, 0.0, "phi-positive"});
    }
    if (i + 1 < grid.size()) {
      const double lo = gp.psi(t);
      const double hi = gp.psi(grid[i + 1]);
      if (!(hi > lo)) verdict.add({{t, grid[i + 1]}, lo, hi, "psi-monotone"});
    }
  }
  return verdict;
}

IntegralGauge IntegralGauge::identity() {
  return make_integral_gauge(ClosedFormSpec{
      [](double x) { return x; }, [](double x) { return std::log(x); }, "identity"});
}

IntegralGauge IntegralGauge::power_self() {
  // x^x -> 1 as x -> 0+, but G(0) must be 0; integer distances never probe (0,1).
  return make_integral_gauge(ClosedFormSpec{
      [](double x) { return x == 0.0 ? 0.0 : std::pow(x, x); },
      [](double x) { return x * std::log(x); }, "x^x"});
}

IntegralGauge make_integral_gauge(IntegralGauge::ClosedFormSpec spec) {
  if (!spec.G) throw Error("closed-form gauge needs G");
  IntegralGauge g;
  g.kind_ = IntegralGauge::Kind::ClosedForm;
  g.name_ = std::move(spec.name);
  g.G_ = std::move(spec.G);
  g.log_G_ = std::move(spec.log_G);
  return g;
}

IntegralGauge make_integral_gauge(IntegralGauge::QuadratureSpec spec) {
  if (!spec.f) throw Error("quadrature gauge needs an integrand");
  if (!(spec.quad_tol > 0.0)) throw Error("quadrature gauge needs quad_tol > 0");
  IntegralGauge g;
  g.kind_ = IntegralGauge::Kind::Quadrature;
  g.name_ = std::move(spec.name);
  g.f_ = std::move(spec.f);
  g.quad_tol_ = spec.quad_tol;
  g.max_depth_ = spec.max_depth;
  g.cache_ = std::make_shared<IntegralGauge::Cache>();
  return g;
}

double IntegralGauge::operator()(double x) const {
  if (!(x >= 0.0)) {
    std::ostringstream os;
    os << "gauge " << name_ << " evaluated at invalid distance " << x;
    throw Error(os.str());
  }
  if (x == 0.0) return 0.0;
  if (kind_ == Kind::ClosedForm) return G_(x);

  {
    std::lock_guard lock(cache_->mu);
    if (auto it = cache_->values.find(x); it != cache_->values.end()) return it->second;
  }
  const double value = integrate(f_, 0.0, x, quad_tol_, max_depth_).value;
  std::lock_guard lock(cache_->mu);
  cache_->values.emplace(x, value);
  return value;
}

std::optional<double> IntegralGauge::log(double x) const {
  if (!log_G_ || !(x > 0.0)) return std::nullopt;
  return log_G_(x);
}

}  // namespace fplab
