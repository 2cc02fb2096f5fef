#include "quadprop/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace quadprop {

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
    if (a == b) return 0.0;
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    double error = 0, l1 = 0;
    const double result = GK::integrate(f, a, b, opt.max_depth, opt.tol, &error, &l1);
    // The estimate is conservative; only flag results that are clearly unconverged.
    if (!(error <= 1e-6 * (1.0 + l1)))
        throw NumericsError("quadrature failed to converge on the requested interval");
    return result;
}

complex integrate_complex(const std::function<complex(double)>& f, double a, double b,
                          const QuadratureOptions& opt) {
    const double re = integrate([&](double t) { return f(t).real(); }, a, b, opt);
    const double im = integrate([&](double t) { return f(t).imag(); }, a, b, opt);
    return {re, im};
}

}  // namespace quadprop
