#pragma once

// JSON encodings for specs, spaces, problems and reports.

#include "json.hpp"

#include "fplab/gauges.hpp"
#include "fplab/metric.hpp"
#include "fplab/picard.hpp"
#include "fplab/verifier.hpp"
#include "fplab/volterra.hpp"

namespace fplab::io {

using nlohmann::json;

/// {"kind": "cclass", "id": n, "params": {...}}
CClassFn cclass_from_json(const json& j);
json to_json(const CClassFn& F);

/// {"kind": "closed_form", "name": "identity" | "x^x"} or
/// {"kind": "quadrature", "integrand": "constant" | "linear" | "exp", "params": {...}, "quad_tol": x}
IntegralGauge integral_gauge_from_json(const json& j);
json to_json(const IntegralGauge& g);

/// {"kind": "gauge_pair", "psi": {"type": "linear", "A": a}, "phi": {"type": "linear", "B": b}}
GaugePair gauge_pair_from_json(const json& j);

/// Number, or a "p/q" string for exact premise comparisons.
Alpha alpha_from_json(const json& j);

HypothesisSpec hypothesis_from_json(const json& j);

struct SpaceInput {
  FiniteMetricSpace space;
  SelfMap map;
};

/// {"points": [{"label": ..., "coords": [a, b]?}], "dist": [[...]]?, "map": [...]}
SpaceInput space_from_json(const json& j);
json to_json(const FiniteMetricSpace& space, const SelfMap& map);

struct VolterraInput {
  volterra::Problem problem;
  volterra::SolveOptions options;
};

/// {"g": {...} | [node values], "K": {"type": ..., "params": {...}}, "M": n,
///  "stop_tol": x, "max_iter": n, "hypothesis": {...}?}
VolterraInput volterra_from_json(const json& j);

json to_json(const PropertyVerdict& v);
json to_json(const VerificationReport& r, const FiniteMetricSpace& space);
json to_json(const PicardTrace& t, const FiniteMetricSpace& space);
json to_json(const volterra::Solution& s, const volterra::Problem& p);

}  // namespace fplab::io
