#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>

#include "fplab/verdict.hpp"

namespace fplab {

using ParamMap = std::map<std::string, double>;

/// Tolerances shared by the C-class checks.
inline constexpr double kCClassTol = 1e-9;
inline constexpr double kCClassEqualityBand = 1e-7;

/// A two-argument combinator F(s, t) meant to satisfy F(s,t) <= s, with
/// F(s,t) = s only when s = 0 or t = 0.
class CClassFn {
 public:
  using Eval = std::function<double(double, double)>;

  CClassFn(int id, ParamMap params, Eval eval, std::string formula,
           std::optional<double> linear_slope = std::nullopt);

  /// Arbitrary combinator outside the catalog (id 0). Used for mutation tests.
  static CClassFn custom(Eval eval, std::string formula);
  /// F(s,t) = slope * s; catalog item 2 when slope lies in (0, 1).
  static CClassFn scaled(double slope);

  double operator()(double s, double t) const { return eval_(s, t); }

  int id() const { return id_; }
  const ParamMap& params() const { return params_; }
  const std::string& formula() const { return formula_; }
  /// Set when F(s,t) = c*s for a known c, which enables log-space comparisons.
  std::optional<double> linear_slope() const { return linear_slope_; }

 private:
  int id_;
  ParamMap params_;
  Eval eval_;
  std::string formula_;
  std::optional<double> linear_slope_;
};

/// Callables for the catalog items parametrized by functions.
struct CClassCallables {
  std::function<double(double)> beta;          // item 9, [0,inf) -> [0,1)
  std::function<double(double)> phi;           // item 11, zero only at 0
  std::function<double(double, double)> h;     // item 12, < 1 off the axes
  std::function<double(double)> upper;         // item 15, upper(t) < t
};

/// Catalog items 1..17. Missing numeric parameters take the default
/// instantiation; missing callables likewise.
CClassFn catalog_cclass(int id, const ParamMap& params = {},
                        const CClassCallables& callables = {});

/// Default parameters used when a catalog item is requested without any.
ParamMap default_params(int id);

inline constexpr int kCatalogSize = 17;

/// Uniform product grid over [0, s_max] x [0, t_max], axes included.
struct CClassGrid {
  double s_max = 10.0;
  double t_max = 10.0;
  std::size_t s_points = 100;
  std::size_t t_points = 100;
};

struct CClassCheckOptions {
  double tol = kCClassTol;
  double equality_band = kCClassEqualityBand;
};

/// Samples both C-class conditions over the grid. Condition (1) failures are
/// tagged "upper-bound", condition (2) suspects "equality", non-finite values
/// "non-finite".
PropertyVerdict verify_cclass(const CClassFn& F, const CClassGrid& grid = {},
                              const CClassCheckOptions& opts = {});

/// psi strictly increasing with psi(0) = 0; phi positive on (0, inf).
struct GaugePair {
  std::function<double(double)> psi;
  std::function<double(double)> phi;
  std::string label;
  std::optional<double> psi_slope;  // set when psi(t) = A*t

  /// psi(t) = A t, phi(t) = B t.
  static GaugePair linear(double A, double B);
};

/// Checks psi(0)=0, strict growth of psi between consecutive grid points and
/// phi > 0 on positive grid points. `grid` must be strictly increasing.
PropertyVerdict verify_gauge_pair(const GaugePair& gp, std::span<const double> grid);

/// Cumulative integral G(x) = int_0^x f(t) dt of a positive integrand.
class IntegralGauge {
 public:
  enum class Kind { ClosedForm, Quadrature };

  struct ClosedFormSpec {
    std::function<double(double)> G;
    std::function<double(double)> log_G;  // optional, ln G(x) for x > 0
    std::string name;
  };
  struct QuadratureSpec {
    std::function<double(double)> f;
    std::string name;
    double quad_tol = 1e-10;
    unsigned max_depth = 30;
  };

  static IntegralGauge identity();
  /// G(x) = x^x for x > 0, G(0) = 0; log G(x) = x ln x.
  static IntegralGauge power_self();

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double quad_tol() const { return quad_tol_; }

  /// G(x); throws fplab::Error for negative x or a failed quadrature.
  double operator()(double x) const;
  /// ln G(x) when a closed-form logarithm is available.
  std::optional<double> log(double x) const;
  bool has_log() const { return static_cast<bool>(log_G_); }

 private:
  friend IntegralGauge make_integral_gauge(ClosedFormSpec spec);
  friend IntegralGauge make_integral_gauge(QuadratureSpec spec);

  struct Cache {
    std::mutex mu;
    std::unordered_map<double, double> values;
  };

  IntegralGauge() = default;

  Kind kind_ = Kind::ClosedForm;
  std::string name_;
  std::function<double(double)> G_;
  std::function<double(double)> log_G_;
  std::function<double(double)> f_;
  double quad_tol_ = 0.0;
  unsigned max_depth_ = 30;
  std::shared_ptr<Cache> cache_;
};

IntegralGauge make_integral_gauge(IntegralGauge::ClosedFormSpec spec);
IntegralGauge make_integral_gauge(IntegralGauge::QuadratureSpec spec);

}  // namespace fplab
