#include "fplab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fplab/verdict.hpp"

namespace fplab {

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, unsigned max_depth) {
  if (!(abs_tol > 0.0)) throw Error("quadrature tolerance must be positive");
  if (a == b) return {};

  // Boost compares an unscaled error estimate against a scaled tolerance, so
  // intervals far from unit length are mis-judged. Integrate over [0, 1].
  const double width = b - a;
  auto checked = [&f, a, width](double v01) {
    const double t = a + width * v01;
    const double v = width * f(t);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrand is not finite at t=" << t;
      throw Error(os.str());
    }
    return v;
  };

  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double error = 0.0;
  double l1 = 0.0;
  // One unrefined pass sizes the relative tolerance handed to the adaptive run.
  GK::integrate(checked, 0.0, 1.0, 0, std::numeric_limits<double>::infinity(), &error, &l1);
  const double rel_tol = std::clamp(abs_tol / std::max(1.0, l1),
                                    64.0 * std::numeric_limits<double>::epsilon(), 0.5);
  const double value = GK::integrate(checked, 0.0, 1.0, max_depth, rel_tol, &error, &l1);

  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * l1;
  if (!std::isfinite(value) || error > std::max(abs_tol, floor)) {
    std::ostringstream os;
    os << "quadrature on [" << a << ", " << b << "] did not converge: error "
       << error << " > " << abs_tol;
    throw Error(os.str());
  }
  return {value, error};
}

}  // namespace fplab
