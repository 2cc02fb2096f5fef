#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "quadprop/common.hpp"

namespace quadprop {

/// Uniform spatial grid with n points inclusive of both ends.
struct UniformGrid {
    double x_min = -8, x_max = 8;
    std::size_t n = 1024;

    double dx() const { return (x_max - x_min) / double(n - 1); }
    double x(std::size_t j) const { return x_min + dx() * double(j); }
    std::vector<double> points() const;
    void validate() const;
    bool operator==(const UniformGrid&) const = default;
};

/// A complex-valued function sampled on a uniform grid, tagged with time.
struct ComplexGridFunction {
    UniformGrid grid;
    double t = 0;
    std::vector<complex> values;

    void validate() const;
};

ComplexGridFunction sample_grid(const UniformGrid& grid, double t,
                                const std::function<complex(double)>& fn);

/// Trapezoidal integral of conj(f)*g dx (spectrally accurate for states that
/// decay below rounding at the edges).
complex inner_product(const ComplexGridFunction& f, const ComplexGridFunction& g);

double l2_norm(const ComplexGridFunction& f);
double l2_distance(const ComplexGridFunction& f, const ComplexGridFunction& g);

/// Fraction of the |f|^2 mass lying in the outer `band` fraction of the box
/// on either side; large values flag an invalid truncation.
double edge_mass(const ComplexGridFunction& f, double band = 0.05);

/// 4th-order finite-difference first/second derivatives on the grid
/// (one-sided stencils of the same order at the boundary points).
std::vector<complex> deriv1_4th(const UniformGrid& grid, const std::vector<complex>& f);
std::vector<complex> deriv2_4th(const UniformGrid& grid, const std::vector<complex>& f);

/// 2nd-order variants (used for stencil cross-checks).
std::vector<complex> deriv1_2nd(const UniformGrid& grid, const std::vector<complex>& f);
std::vector<complex> deriv2_2nd(const UniformGrid& grid, const std::vector<complex>& f);

}  // namespace quadprop
