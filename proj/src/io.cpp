#include "fplab/io.hpp"

#include <cmath>
#include <sstream>

namespace fplab::io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) throw Error(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

std::string string_field(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) throw Error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

ParamMap params_of(const json& j) {
  ParamMap params;
  if (!j.contains("params")) return params;
  const json& p = j.at("params");
  if (!p.is_object()) throw Error("'params' must be an object");
  for (const auto& [key, value] : p.items()) {
    if (!value.is_number()) throw Error("parameter '" + key + "' must be a number");
    params[key] = value.get<double>();
  }
  return params;
}

std::function<double(double)> linear_fn(const json& j, const char* coeff) {
  if (string_field(j, "type") != "linear") throw Error("only linear psi/phi are supported");
  const double c = number(j, coeff);
  return [c](double t) { return c * t; };
}

}  // namespace

CClassFn cclass_from_json(const json& j) {
  if (string_field(j, "kind") != "cclass") throw Error("expected kind 'cclass'");
  const json& id = require(j, "id");
  if (!id.is_number_integer()) throw Error("'id' must be an integer");
  return catalog_cclass(id.get<int>(), params_of(j));
}

json to_json(const CClassFn& F) {
  json params = json::object();
  for (const auto& [k, v] : F.params()) params[k] = v;
  return {{"kind", "cclass"}, {"id", F.id()}, {"params", params}, {"formula", F.formula()}};
}

IntegralGauge integral_gauge_from_json(const json& j) {
  const std::string kind = string_field(j, "kind");
  if (kind == "closed_form") {
    const std::string name = string_field(j, "name");
    if (name == "identity") return IntegralGauge::identity();
    if (name == "x^x") return IntegralGauge::power_self();
    throw Error("unknown closed-form gauge '" + name + "'");
  }
  if (kind != "quadrature") throw Error("unknown gauge kind '" + kind + "'");

  const std::string integrand = string_field(j, "integrand");
  const ParamMap p = params_of(j);
  auto param = [&](const char* key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
  };
  IntegralGauge::QuadratureSpec spec;
  spec.quad_tol = number_or(j, "quad_tol", 1e-10);
  spec.name = integrand;
  if (integrand == "constant") {
    const double c = param("c", 1.0);
    if (!(c > 0.0)) throw Error("constant integrand needs c > 0");
    spec.f = [c](double) { return c; };
  } else if (integrand == "linear") {
    // c t is zero at 0 but G stays strictly increasing.
    const double c = param("c", 2.0);
    if (!(c > 0.0)) throw Error("linear integrand needs c > 0");
    spec.f = [c](double t) { return c * t; };
  } else if (integrand == "exp") {
    const double r = param("r", 1.0);
    spec.f = [r](double t) { return std::exp(r * t); };
  } else {
    throw Error("unknown integrand '" + integrand + "'");
  }
  return make_integral_gauge(std::move(spec));
}

json to_json(const IntegralGauge& g) {
  if (g.kind() == IntegralGauge::Kind::ClosedForm) {
    return {{"kind", "closed_form"}, {"name", g.name()}};
  }
  return {{"kind", "quadrature"}, {"integrand", g.name()}, {"quad_tol", g.quad_tol()}};
}

GaugePair gauge_pair_from_json(const json& j) {
  const json& psi = require(j, "psi");
  const json& phi = require(j, "phi");
  if (string_field(psi, "type") == "linear" && string_field(phi, "type") == "linear") {
    return GaugePair::linear(number(psi, "A"), number(phi, "B"));
  }
  GaugePair gp;
  gp.psi = linear_fn(psi, "A");
  gp.phi = linear_fn(phi, "B");
  return gp;
}

Alpha alpha_from_json(const json& j) {
  if (j.is_number()) return Alpha::real(j.get<double>());
  if (!j.is_string()) throw Error("alpha must be a number or a \"p/q\" string");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Alpha::real(std::stod(s));
    std::size_t used = 0;
    const auto num = std::stoll(s.substr(0, slash), &used);
    const auto den = std::stoll(s.substr(slash + 1));
    return Alpha::rational(num, den);
  } catch (const std::logic_error&) {
    throw Error("cannot parse alpha '" + s + "'");
  }
}

HypothesisSpec hypothesis_from_json(const json& j) {
  HypothesisSpec spec;
  spec.theorem = theorem_from_string(string_field(j, "theorem"));
  if (j.contains("alpha")) spec.alpha = alpha_from_json(j.at("alpha"));
  if (j.contains("beta")) spec.beta = number(j, "beta");
  if (j.contains("gauge")) spec.gauge = integral_gauge_from_json(j.at("gauge"));
  if (j.contains("F")) spec.F = cclass_from_json(j.at("F"));
  if (j.contains("gp")) spec.gp = gauge_pair_from_json(j.at("gp"));
  spec.tol = number_or(j, "tol", kPairTol);
  spec.validate();
  return spec;
}

SpaceInput space_from_json(const json& j) {
  const json& pts = require(j, "points");
  if (!pts.is_array()) throw Error("'points' must be an array");
  std::vector<Point> points;
  bool all_coords = true;
  for (const auto& p : pts) {
    Point pt;
    pt.label = string_field(p, "label");
    if (p.contains("coords")) {
      const json& c = p.at("coords");
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() ||
          !c[1].is_number_integer()) {
        throw Error("'coords' must be two integers");
      }
      pt.coords = Coords{c[0].get<std::int64_t>(), c[1].get<std::int64_t>()};
    } else {
      all_coords = false;
    }
    points.push_back(std::move(pt));
  }

  std::optional<FiniteMetricSpace> space;
  if (j.contains("dist")) {
    const json& d = j.at("dist");
    if (!d.is_array()) throw Error("'dist' must be a matrix");
    std::vector<std::vector<double>> dist;
    for (const auto& row : d) {
      if (!row.is_array()) throw Error("'dist' must be a matrix");
      std::vector<double> r;
      for (const auto& v : row) {
        if (!v.is_number()) throw Error("'dist' entries must be numbers");
        r.push_back(v.get<double>());
      }
      dist.push_back(std::move(r));
    }
    space.emplace(std::move(points), std::move(dist));
  } else {
    if (!all_coords) throw Error("'dist' is required when some point lacks coords");
    space.emplace(FiniteMetricSpace::from_l1(std::move(points)));
  }

  const json& m = require(j, "map");
  if (!m.is_array()) throw Error("'map' must be an array of indices");
  SelfMap map;
  for (const auto& v : m) {
    if (!v.is_number_unsigned()) throw Error("'map' entries must be nonnegative integers");
    map.image.push_back(v.get<std::size_t>());
  }
  require_self_map(*space, map);
  return {std::move(*space), std::move(map)};
}

json to_json(const FiniteMetricSpace& space, const SelfMap& map) {
  json points = json::array();
  for (const auto& p : space.points()) {
    json jp = {{"label", p.label}};
    if (p.coords) jp["coords"] = {(*p.coords)[0], (*p.coords)[1]};
    points.push_back(std::move(jp));
  }
  json dist = json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < space.size(); ++k) row.push_back(space.distance(i, k));
    dist.push_back(std::move(row));
  }
  return {{"points", points}, {"dist", dist}, {"map", map.image}};
}

namespace {

volterra::Forcing forcing_from_json(const json& j, std::size_t M) {
  if (j.is_array()) {
    if (j.size() != M + 1) throw Error("'g' node values must have M+1 entries");
    std::vector<double> nodes;
    for (const auto& v : j) {
      if (!v.is_number()) throw Error("'g' node values must be numbers");
      nodes.push_back(v.get<double>());
    }
    return [nodes, M](double t, std::span<double> out) {
      const auto j = static_cast<std::size_t>(std::llround(t * static_cast<double>(M)));
      out[0] = nodes[std::min(j, M)];
    };
  }
  const std::string type = string_field(j, "type");
  if (type == "constant") {
    const double c = number(j, "value");
    return volterra::scalar_forcing([c](double) { return c; });
  }
  if (type == "linear") {
    const double a = number_or(j, "a", 0.0);
    const double b = number_or(j, "b", 0.0);
    return volterra::scalar_forcing([a, b](double t) { return a + b * t; });
  }
  if (type == "exp") {
    const double r = number_or(j, "rate", 1.0);
    return volterra::scalar_forcing([r](double t) { return std::exp(r * t); });
  }
  throw Error("unknown forcing type '" + type + "'");
}

volterra::Kernel kernel_from_json(const json& j) {
  const std::string type = string_field(j, "type");
  const json params = j.contains("params") ? j.at("params") : json::object();
  if (type == "linear") {
    const double lambda = number_or(params, "lambda", 1.0);
    return volterra::scalar_kernel([lambda](double, double x) { return lambda * x; });
  }
  if (type == "scaled-sine") {
    const double lambda = number_or(params, "lambda", 1.0);
    return volterra::scalar_kernel([lambda](double, double x) { return lambda * std::sin(x); });
  }
  if (type == "polynomial") {
    const json& c = require(params, "coeffs");
    if (!c.is_array() || c.empty()) throw Error("polynomial kernel needs a non-empty 'coeffs'");
    std::vector<double> coeffs;
    for (const auto& v : c) {
      if (!v.is_number()) throw Error("polynomial coefficients must be numbers");
      coeffs.push_back(v.get<double>());
    }
    // Horner, lowest degree first in the list.
    return volterra::scalar_kernel([coeffs](double, double x) {
      double acc = 0.0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
      return acc;
    });
  }
  throw Error("unknown kernel type '" + type + "'");
}

}  // namespace

VolterraInput volterra_from_json(const json& j) {
  if (!j.is_object()) throw Error("problem must be a JSON object");
  const json& m = require(j, "M");
  if (!m.is_number_unsigned() || m.get<std::size_t>() < 1) throw Error("'M' must be >= 1");
  VolterraInput in;
  in.problem.M = m.get<std::size_t>();
  in.problem.dim = 1;
  in.problem.g = forcing_from_json(require(j, "g"), in.problem.M);
  in.problem.K = kernel_from_json(require(j, "K"));
  in.options.rule.stop_tol = number_or(j, "stop_tol", in.options.rule.stop_tol);
  if (j.contains("max_iter")) {
    const json& mi = j.at("max_iter");
    if (!mi.is_number_unsigned() || mi.get<std::size_t>() < 1) {
      throw Error("'max_iter' must be a positive integer");
    }
    in.options.rule.max_iter = mi.get<std::size_t>();
  }
  in.options.rule.validate();
  if (j.contains("hypothesis")) {
    const json& h = j.at("hypothesis");
    in.problem.hypothesis = volterra::Hypothesis{
        alpha_from_json(require(h, "alpha")), cclass_from_json(require(h, "F")),
        gauge_pair_from_json(require(h, "gp")), integral_gauge_from_json(require(h, "gauge")),
        number_or(h, "tol", 1e-9)};
  }
  in.problem.validate();
  return in;
}

namespace {

// JSON has no infinities; they are written as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

json to_json(const PropertyVerdict& v) {
  json violations = json::array();
  for (const auto& x : v.violations) {
    json point = json::array();
    for (double p : x.point) point.push_back(num(p));
    violations.push_back(
        {{"point", point}, {"lhs", num(x.lhs)}, {"rhs", num(x.rhs)}, {"kind", x.kind}});
  }
  json out = {{"status", to_string(v.status)},
              {"passed", v.passed()},
              {"samples", v.samples},
              {"violations", violations}};
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

json to_json(const VerificationReport& r, const FiniteMetricSpace& space) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"x", space.point(v.x).label},
                          {"y", space.point(v.y).label},
                          {"premise_lhs", num(v.premise_lhs)},
                          {"premise_rhs", num(v.premise_rhs)},
                          {"cond_lhs", num(v.cond_lhs)},
                          {"cond_rhs", num(v.cond_rhs)},
                          {"kind", v.kind},
                          {"log_scale", v.log_scale}});
  }
  json out = {{"theorem", to_string(r.theorem)},
              {"holds", r.holds},
              {"pairs", r.total_pairs},
              {"active", r.premise_active_pairs},
              {"vacuous", r.vacuous_pairs},
              {"violations", violations}};
  if (r.min_feasible_beta) out["min_feasible_beta"] = num(*r.min_feasible_beta);
  return out;
}

json to_json(const PicardTrace& t, const FiniteMetricSpace& space) {
  json path = json::array();
  for (auto i : t.iterates) path.push_back(space.point(i).label);
  json out = {{"start", space.point(t.start).label},
              {"path", path},
              {"a_n", t.step_dists},
              {"converged", t.converged()},
              {"status", to_string(t.status)},
              {"steps", t.steps}};
  if (!t.cycle.empty()) {
    json cycle = json::array();
    for (auto i : t.cycle) cycle.push_back(space.point(i).label);
    out["cycle"] = cycle;
  }
  return out;
}

json to_json(const volterra::Solution& s, const volterra::Problem& p) {
  json t = json::array();
  json values = json::array();
  for (std::size_t j = 0; j < s.values.nodes(); ++j) {
    t.push_back(p.node(j));
    if (s.values.dim() == 1) {
      values.push_back(num(s.values[j]));
    } else {
      json row = json::array();
      for (double v : s.values.at(j)) row.push_back(num(v));
      values.push_back(std::move(row));
    }
  }
  return {{"t", t},
          {"values", values},
          {"residual", num(s.residual)},
          {"iterations", s.iterations},
          {"converged", s.converged}};
}

}  // namespace fplab::io
