#pragma once

#include "quadprop/grid.hpp"
#include "quadprop/scenario.hpp"
#include "quadprop/states.hpp"

namespace quadprop {

/// Matrix elements <bra| · |ket> over a common grid; p̂ = -i hbar ∂_x via
/// 4th-order stencils. Off-diagonal elements are genuinely complex.
struct MomentSet {
    complex overlap;  // <bra|ket>
    complex mean_x, mean_x2;
    complex mean_p, mean_p2;
    double edge_mass = 0;
};

MomentSet moments(const ComplexGridFunction& bra, const ComplexGridFunction& ket,
                  double hbar);

/// Diagonal uncertainty product <(Δx)²><(Δp)²> for level m in its two printed
/// parametrizations (basis form and polar form); the two must agree to
/// rounding, and both must dominate the Heisenberg bound (m+1/2)² hbar².
struct UncertaintyDiagonal {
    double form_uv = 0;
    double form_polar = 0;
};
UncertaintyDiagonal uncertainty_diagonal(const StateFamily& family, int m, double t);

/// Off-diagonal products <m+offset|(Δx)²|m>·<m+offset|(Δp)²|m> two printed
/// parametrizations; offset ∈ {1, 2}.
struct UncertaintyOffdiag {
    complex form_uv;
    complex form_polar;
};
UncertaintyOffdiag uncertainty_offdiag(const StateFamily& family, int m, int offset,
                                       double t);

/// Quadrature oracle for the same product with Δ taken about the ket's
/// diagonal means (the recorded convention for the off-diagonal case).
complex uncertainty_product_quadrature(const StateFamily& family, Variant variant, int m,
                                       int offset, const UniformGrid& grid, double t);

}  // namespace quadprop
