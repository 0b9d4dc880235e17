#pragma once

// Serial, double-only versions of the parallel sweeps. Kept as a test oracle
// and benchmark baseline; no log-space fallback, premise always in floating point.

#include "fplab/gauges.hpp"
#include "fplab/metric.hpp"
#include "fplab/verifier.hpp"

namespace fplab::reference {

VerificationReport check_banach(const FiniteMetricSpace& space, const SelfMap& map,
                                double beta, double tol = kPairTol);
VerificationReport check_branciari(const FiniteMetricSpace& space, const SelfMap& map,
                                   double beta, const IntegralGauge& gauge,
                                   double tol = kPairTol);
VerificationReport check_suzuki(const FiniteMetricSpace& space, const SelfMap& map,
                                double alpha, double beta, double tol = kPairTol);
VerificationReport check_integral_suzuki(const FiniteMetricSpace& space, const SelfMap& map,
                                         double alpha, double beta,
                                         const IntegralGauge& gauge, double tol = kPairTol);
VerificationReport check_cclass_integral_suzuki(const FiniteMetricSpace& space,
                                                const SelfMap& map, double alpha,
                                                const CClassFn& F, const GaugePair& gp,
                                                const IntegralGauge& gauge,
                                                double tol = kPairTol);

PropertyVerdict verify_cclass(const CClassFn& F, const CClassGrid& grid = {},
                              const CClassCheckOptions& opts = {});

}  // namespace fplab::reference
