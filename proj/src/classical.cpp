#include "quadprop/classical.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "quadprop/common.hpp"

namespace quadprop {

DenseSolution solve_homogeneous(const Scenario& sc, InitialConditions ic, double t_ic,
                                const IntegratorOptions& opt) {
    return integrate_eom(sc, t_ic, ic.value, ic.slope, /*with_drive=*/false, opt);
}

ParticularSolution solve_particular(const Scenario& sc, double t_anchor, double slope,
                                    const IntegratorOptions& opt) {
    ParticularSolution out;
    out.x = integrate_eom(sc, t_anchor, 0.0, slope, /*with_drive=*/true, opt);
    out.t_anchor = t_anchor;
    return out;
}

double wronskian_drift(const Scenario& sc, const DenseSolution& u, const DenseSolution& v,
                       double omega_ref, int n_samples) {
    if (omega_ref == 0) throw ValidationError("wronskian_drift: reference invariant is zero");
    double worst = 0;
    for (int i = 0; i < n_samples; ++i) {
        const double t =
            u.t_min() + (u.t_max() - u.t_min()) * double(i) / double(n_samples - 1);
        const double m = sc.evaluate(t).M;
        const double omega = m * (v.deriv(t) * u.value(t) - u.deriv(t) * v.value(t));
        worst = std::max(worst, std::abs(omega - omega_ref) / std::abs(omega_ref));
    }
    return worst;
}

ClassicalBasis make_basis(const Scenario& sc, InitialConditions ic_u, InitialConditions ic_v,
                          double t_anchor, const BasisOptions& opt) {
    ClassicalBasis basis;
    basis.u = solve_homogeneous(sc, ic_u, t_anchor, opt.integrator);
    basis.v = solve_homogeneous(sc, ic_v, t_anchor, opt.integrator);
    basis.t_anchor = t_anchor;
    const double m = sc.evaluate(t_anchor).M;
    basis.omega = m * (ic_v.slope * ic_u.value - ic_u.slope * ic_v.value);
    const double scale = m * (std::abs(ic_v.slope * ic_u.value) + std::abs(ic_u.slope * ic_v.value) +
                              std::abs(ic_u.value) + std::abs(ic_v.value) + 1e-300);
    if (std::abs(basis.omega) <= opt.tol_degenerate * scale)
        throw ValidationError("make_basis: the two solutions are (nearly) dependent");
    const double drift = wronskian_drift(sc, basis.u, basis.v, basis.omega);
    if (drift > opt.tol_wronskian)
        throw NumericsError("make_basis: invariant drift " + std::to_string(drift) +
                            " exceeds tolerance; integration is inconsistent");
    return basis;
}

ShiftedBasis shift_basis(const ClassicalBasis& basis, const Scenario& sc, double t_pin,
                         double tol_degenerate) {
    sc.validate_time(t_pin);
    const double u0 = basis.u.value(t_pin);
    const double u_scale = basis.u.max_abs_on(basis.u.t_min(), basis.u.t_max());
    if (std::abs(u0) <= tol_degenerate * (u_scale + 1e-300))
        throw DomainError("shift_basis: u vanishes at the pin time; choose another basis");
    // raw = v - (v/u)|_pin * u has raw(t_pin) = 0; rescale to unit slope there.
    const double c = basis.v.value(t_pin) / u0;
    const double slope_raw = basis.v.deriv(t_pin) - c * basis.u.deriv(t_pin);
    if (slope_raw == 0)
        throw DomainError("shift_basis: recombination is degenerate at the pin time");
    ShiftedBasis out;
    out.u = basis.u;
    out.v_s = DenseSolution::combine(1.0 / slope_raw, basis.v, -c / slope_raw, basis.u);
    out.t_pin = t_pin;
    out.omega_s = sc.evaluate(t_pin).M * u0;
    return out;
}

ClassicalPath::ClassicalPath(const ShiftedBasis& basis, const ParticularSolution& part,
                             const Endpoints& ep, double tol_caustic)
    : u_(basis.u), v_s_(basis.v_s), x_p_(part.x), ep_(ep) {
    const double span = u_.t_max() - u_.t_min();
    if (std::abs(ep.t_a - basis.t_pin) > 1e-9 * span)
        throw ValidationError("ClassicalPath: endpoints.t_a must match the basis pin time");
    if (std::abs(ep.t_b - ep.t_a) <= 1e-12 * span)
        throw DomainError("ClassicalPath: endpoint times coincide");

    const double vs_b = v_s_.value(ep.t_b);
    const double vs_scale =
        v_s_.max_abs_on(std::min(ep.t_a, ep.t_b), std::max(ep.t_a, ep.t_b));
    if (std::abs(vs_b) <= tol_caustic * (vs_scale + 1e-300))
        throw CausticError(
            "ClassicalPath: v_s vanishes at t_b (focal point); the boundary-value problem is "
            "singular",
            ep.t_b);

    const double u_a = u_.value(ep.t_a);
    if (u_a == 0) throw DomainError("ClassicalPath: u vanishes at t_a");
    coef_u_ = (ep.x_a - x_p_.value(ep.t_a)) / u_a;
    coef_v_ = (ep.x_b - x_p_.value(ep.t_b) - coef_u_ * u_.value(ep.t_b)) / vs_b;
}

double ClassicalPath::value(double t) const {
    return x_p_.value(t) + coef_u_ * u_.value(t) + coef_v_ * v_s_.value(t);
}

double ClassicalPath::deriv(double t) const {
    return x_p_.deriv(t) + coef_u_ * u_.deriv(t) + coef_v_ * v_s_.deriv(t);
}

namespace {

/// Phase increment of u - i v from t1 to t2, resolving the 2*pi ambiguity by
/// recursive bisection until each piece is unambiguously small.
double phase_increment(const DenseSolution& u, const DenseSolution& v, double t1, double t2,
                       int depth = 0) {
    const double u1 = u.value(t1), v1 = v.value(t1);
    const double u2 = u.value(t2), v2 = v.value(t2);
    // (u2 - i v2) * (u1 + i v1) = rho1 rho2 e^{-i (theta2 - theta1)}
    const double re = u2 * u1 + v2 * v1;
    const double im = v1 * u2 - v2 * u1;
    const double delta = -std::atan2(im, re);
    if (std::abs(delta) <= 0.1 && depth > 0) return delta;
    if (depth >= 48)
        throw NumericsError("phase tracking failed: the polar angle varies too rapidly");
    const double tm = 0.5 * (t1 + t2);
    return phase_increment(u, v, t1, tm, depth + 1) + phase_increment(u, v, tm, t2, depth + 1);
}

}  // namespace

RhoTheta::RhoTheta(const Scenario& sc, DenseSolution u, DenseSolution v, double omega,
                   double t_anchor)
    : u_(std::move(u)), v_(std::move(v)), omega_(omega) {
    sc.validate_time(t_anchor);
    const double t0 = u_.t_min(), t1 = u_.t_max();
    const std::size_t n_cells = 4096;
    table_t0_ = t0;
    table_h_ = (t1 - t0) / double(n_cells);
    theta_.resize(n_cells + 1);

    // Absolute angle at the anchor, then propagate increments both ways.
    const double theta_anchor = std::atan2(v_.value(t_anchor), u_.value(t_anchor));
    const auto j_anchor = static_cast<std::size_t>(
        std::clamp(std::llround((t_anchor - t0) / table_h_), 0ll, (long long)n_cells));
    const double t_j_anchor = t0 + table_h_ * double(j_anchor);
    theta_[j_anchor] = theta_anchor + phase_increment(u_, v_, t_anchor, t_j_anchor);
    for (std::size_t j = j_anchor; j + 1 <= n_cells; ++j)
        theta_[j + 1] =
            theta_[j] + phase_increment(u_, v_, t0 + table_h_ * double(j),
                                        t0 + table_h_ * double(j + 1));
    for (std::size_t j = j_anchor; j >= 1; --j)
        theta_[j - 1] =
            theta_[j] + phase_increment(u_, v_, t0 + table_h_ * double(j),
                                        t0 + table_h_ * double(j - 1));
}

std::size_t RhoTheta::nearest_node(double t) const {
    const auto n = theta_.size() - 1;
    const auto j = std::llround((t - table_t0_) / table_h_);
    return static_cast<std::size_t>(std::clamp(j, 0ll, (long long)n));
}

double RhoTheta::rho(double t) const {
    return std::hypot(u_.value(t), v_.value(t));
}

double RhoTheta::rho_dot(double t) const {
    const double uu = u_.value(t), vv = v_.value(t);
    return (uu * u_.deriv(t) + vv * v_.deriv(t)) / std::hypot(uu, vv);
}

double RhoTheta::theta(double t) const {
    const std::size_t j = nearest_node(t);
    const double tj = table_t0_ + table_h_ * double(j);
    const double uj = u_.value(tj), vj = v_.value(tj);
    const double uu = u_.value(t), vv = v_.value(t);
    // (u - i v)(u_j + i v_j) = rho rho_j e^{-i (theta - theta_j)}
    const double re = uu * uj + vv * vj;
    const double im = vj * uu - vv * uj;
    return theta_[j] - std::atan2(im, re);
}

double RhoTheta::theta_dot(double t) const {
    const double uu = u_.value(t), vv = v_.value(t);
    return (v_.deriv(t) * uu - u_.deriv(t) * vv) / (uu * uu + vv * vv);
}

int RhoTheta::count_v_zeros(double t1, double t2) const {
    if (t2 < t1) std::swap(t1, t2);
    const double th1 = theta(t1), th2 = theta(t2);
    const double lo = std::min(th1, th2), hi = std::max(th1, th2);
    const double pi = std::acos(-1.0);
    const double eps = 1e-9 * (1.0 + std::abs(lo) + std::abs(hi));
    const auto k_min = static_cast<long long>(std::floor((lo + eps) / pi)) + 1;
    const auto k_max = static_cast<long long>(std::ceil((hi - eps) / pi)) - 1;
    return k_max >= k_min ? static_cast<int>(k_max - k_min + 1) : 0;
}

RhoTheta rho_theta(const Scenario& sc, const ClassicalBasis& basis) {
    return RhoTheta(sc, basis.u, basis.v, basis.omega, basis.t_anchor);
}

}  // namespace quadprop
