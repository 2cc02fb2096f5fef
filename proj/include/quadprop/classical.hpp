#pragma once

#include <vector>

#include "quadprop/ode.hpp"
#include "quadprop/scenario.hpp"

namespace quadprop {

struct InitialConditions {
    double value = 0;
    double slope = 0;
};

/// Two independent homogeneous solutions with their (constant) Wronskian-type
/// invariant omega = M (vdot u - udot v), fixed at t_anchor.
struct ClassicalBasis {
    DenseSolution u, v;
    double t_anchor = 0;
    double omega = 0;
};

/// Basis recombined so that v_s(t_pin) = 0 and v_s'(t_pin) = 1; u is carried
/// through unchanged. With that normalization M(t_pin) (vdot_s u - udot_s v_s)
/// = M(t_pin) u(t_pin) ... the invariant is omega_s below.
struct ShiftedBasis {
    DenseSolution u, v_s;
    double t_pin = 0;
    double omega_s = 0;  // M (vdot_s u - udot_s v_s), constant in t
};

struct ParticularSolution {
    DenseSolution x;
    double t_anchor = 0;
};

struct Endpoints {
    double t_a = 0, x_a = 0;
    double t_b = 0, x_b = 0;
};

/// Homogeneous equation of motion d/dt(M xdot) + M w2 x = 0 from data at t_ic.
DenseSolution solve_homogeneous(const Scenario& sc, InitialConditions ic, double t_ic,
                                const IntegratorOptions& opt = {});

/// Driven equation of motion d/dt(M xdot) + M w2 x = F, x(t_anchor) = 0,
/// xdot(t_anchor) = slope.
ParticularSolution solve_particular(const Scenario& sc, double t_anchor, double slope = 0,
                                    const IntegratorOptions& opt = {});

struct BasisOptions {
    IntegratorOptions integrator;
    double tol_degenerate = 1e-10;  // relative floor for the Wronskian at t_anchor
    double tol_wronskian = 1e-8;    // allowed relative drift of omega over the interval
};

/// Integrate the pair (u, v) from data given at t_anchor and verify that the
/// invariant omega stays constant over the whole interval.
ClassicalBasis make_basis(const Scenario& sc, InitialConditions ic_u, InitialConditions ic_v,
                          double t_anchor, const BasisOptions& opt = {});

/// Relative drift max_t |omega(t) - omega_ref| / |omega_ref| sampled across
/// the scenario interval.
double wronskian_drift(const Scenario& sc, const DenseSolution& u, const DenseSolution& v,
                       double omega_ref, int n_samples = 257);

/// Recombine (u, v) into v_s with v_s(t_pin) = 0, v_s'(t_pin) = 1 (exact node
/// arithmetic, no re-integration). Requires u(t_pin) away from zero.
ShiftedBasis shift_basis(const ClassicalBasis& basis, const Scenario& sc, double t_pin,
                         double tol_degenerate = 1e-10);

/// The trajectory through (t_a, x_a) and (t_b, x_b) built from the shifted
/// basis and a particular solution:
///   x(t) = x_p(t) + [x_a - x_p(t_a)] u(t)/u(t_a)
///        + {x_b - x_p(t_b) - [x_a - x_p(t_a)] u(t_b)/u(t_a)} v_s(t)/v_s(t_b).
/// Throws CausticError when v_s(t_b) vanishes (no unique trajectory).
class ClassicalPath {
  public:
    ClassicalPath(const ShiftedBasis& basis, const ParticularSolution& part,
                  const Endpoints& ep, double tol_caustic = 1e-10);

    double value(double t) const;
    double deriv(double t) const;
    const Endpoints& endpoints() const { return ep_; }

  private:
    DenseSolution u_, v_s_, x_p_;
    Endpoints ep_;
    double coef_u_ = 0, coef_v_ = 0;
};

/// Polar form of the basis: u - i v = rho e^{-i theta} with rho > 0 and theta
/// continuous across the interval, anchored to the principal value at
/// basis.t_anchor. theta is tabulated densely and queried exactly through the
/// local phase increment, so continuity never relies on interpolation.
class RhoTheta {
  public:
    RhoTheta(const Scenario& sc, DenseSolution u, DenseSolution v, double omega,
             double t_anchor);

    double rho(double t) const;
    double rho_dot(double t) const;
    double theta(double t) const;
    /// (vdot u - udot v) / rho^2 = omega / (M rho^2)
    double theta_dot(double t) const;
    double omega() const { return omega_; }
    const DenseSolution& u() const { return u_; }
    const DenseSolution& v() const { return v_; }

    /// Number of zeros of v in the open interval (t1, t2), counted through
    /// the accumulated phase (each zero of v advances theta past a multiple
    /// of pi).
    int count_v_zeros(double t1, double t2) const;

  private:
    std::size_t nearest_node(double t) const;
    DenseSolution u_, v_;
    double omega_ = 0;
    double table_t0_ = 0, table_h_ = 0;
    std::vector<double> theta_;
};

/// Polar decomposition of a basis (anchored at basis.t_anchor).
RhoTheta rho_theta(const Scenario& sc, const ClassicalBasis& basis);

}  // namespace quadprop
