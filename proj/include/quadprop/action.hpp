#pragma once

#include "quadprop/classical.hpp"
#include "quadprop/quadrature.hpp"
#include "quadprop/scenario.hpp"

namespace quadprop {

/// Which Lagrangian/Hamiltonian family a quantity belongs to:
///   S — undriven quadratic kinetic/potential pair,
///   F — adds the linear drive F(t)x,
///   G — the full form with the total-derivative a/b terms and f(t).
enum class Variant { S, F, G };

Variant parse_variant(const std::string& name);
const char* variant_name(Variant v);

/// Classical action of the undriven system, expressed through basis boundary
/// data as a quadratic form in (x_a, x_b). Throws CausticError at v_s(t_b)=0.
double action_S(const ShiftedBasis& shifted, const Endpoints& ep, const Scenario& sc);

/// Y(t) = ∫_{t0}^{t} (1/2) x_p F dt' by adaptive quadrature.
double phase_integral_Y(const ParticularSolution& x_p, const Scenario& sc, double t0,
                        double t, const QuadratureOptions& quad = {});

/// Endpoint-dependent part of the driven system's action: the boundary
/// expression [ (1/2)M(x̄−x_p)(ẋ̄−ẋ_p) + Mẋ_p(x̄−x_p) ] between the two end
/// times, expanded in (x_a, x_b) through the basis. The full classical action
/// is recovered by adding delta_S1 at both ends.
double action_F_tilde(const ShiftedBasis& shifted, const ParticularSolution& x_p,
                      const Endpoints& ep, const Scenario& sc);

/// General-system variant: action_F_tilde plus the boundary terms
/// M a x² and b x at the two ends.
double action_G_tilde(const ShiftedBasis& shifted, const ParticularSolution& x_p,
                      const Endpoints& ep, const Scenario& sc);

/// Bookkeeping complement: (1/2) M ẋ_p x_p + Y_{x_p} evaluated at time t
/// (Y taken from t0). S_cl^F = S̃^F + [delta_S1]_{t_a}^{t_b}.
double delta_S1(const ParticularSolution& x_p, const Scenario& sc, double t0, double t,
                const QuadratureOptions& quad = {});

/// Direct quadrature of the selected Lagrangian along an evaluable path.
/// S: (1/2)Mẋ² − (1/2)Mw²x²;  F: adds Fx;
/// G: adds d/dt(Max²) + d/dt(bx) + f as well.
double action_numeric(const Scenario& sc, const std::function<double(double)>& x,
                      const std::function<double(double)>& xdot, double t_a, double t_b,
                      Variant variant, const QuadratureOptions& quad = {});

double action_numeric(const Scenario& sc, const ClassicalPath& path, Variant variant,
                      const QuadratureOptions& quad = {});

}  // namespace quadprop
