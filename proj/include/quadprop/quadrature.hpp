#pragma once

#include <functional>

#include "quadprop/common.hpp"

namespace quadprop {

struct QuadratureOptions {
    double tol = 1e-12;  // relative termination target for adaptive refinement
    unsigned max_depth = 15;
};

/// Adaptive Gauss-Kronrod integration of a smooth integrand over [a, b].
/// Throws NumericsError when the error estimate stays far above target.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

complex integrate_complex(const std::function<complex(double)>& f, double a, double b,
                          const QuadratureOptions& opt = {});

}  // namespace quadprop
