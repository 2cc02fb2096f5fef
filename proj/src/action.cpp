#include "quadprop/action.hpp"

#include <cmath>

namespace quadprop {

Variant parse_variant(const std::string& name) {
    if (name == "S" || name == "s") return Variant::S;
    if (name == "F" || name == "f") return Variant::F;
    if (name == "G" || name == "g") return Variant::G;
    throw ConfigError("unknown variant '" + name + "' (expected S, F, or G)");
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::S: return "S";
        case Variant::F: return "F";
        default: return "G";
    }
}

namespace {

void check_endpoints(const ShiftedBasis& shifted, const Endpoints& ep) {
    const double span = shifted.u.t_max() - shifted.u.t_min();
    if (std::abs(ep.t_a - shifted.t_pin) > 1e-9 * span)
        throw ValidationError("endpoints.t_a must match the basis pin time");
    if (!(ep.t_b > ep.t_a)) throw DomainError("endpoints require t_b > t_a");
}

double checked_vs_b(const ShiftedBasis& shifted, const Endpoints& ep,
                    double tol_caustic = 1e-10) {
    const double vs_b = shifted.v_s.value(ep.t_b);
    const double scale = shifted.v_s.max_abs_on(ep.t_a, ep.t_b);
    if (std::abs(vs_b) <= tol_caustic * (scale + 1e-300))
        throw CausticError("v_s vanishes at t_b (conjugate point)", ep.t_b);
    return vs_b;
}

}  // namespace

double action_S(const ShiftedBasis& shifted, const Endpoints& ep, const Scenario& sc) {
    check_endpoints(shifted, ep);
    const double vs_b = checked_vs_b(shifted, ep);
    const double u_a = shifted.u.value(ep.t_a);
    const double u_scale = shifted.u.max_abs_on(ep.t_a, ep.t_b);
    if (std::abs(u_a) <= 1e-12 * (u_scale + 1e-300))
        throw DomainError("u vanishes at t_a; re-anchor the basis");

    const double m_a = sc.evaluate(ep.t_a).M, m_b = sc.evaluate(ep.t_b).M;
    const double ud_a = shifted.u.deriv(ep.t_a), ud_b = shifted.u.deriv(ep.t_b);
    const double u_b = shifted.u.value(ep.t_b);
    const double vsd_a = shifted.v_s.deriv(ep.t_a), vsd_b = shifted.v_s.deriv(ep.t_b);

    const double coef_aa = 0.5 * m_a * (-ud_a / u_a + (u_b / u_a) * (vsd_a / vs_b));
    const double coef_bb = 0.5 * m_b * vsd_b / vs_b;
    const double coef_ab =
        0.5 * (m_b * (ud_b / u_a - u_b * vsd_b / (u_a * vs_b)) - m_a * vsd_a / vs_b);
    return coef_aa * ep.x_a * ep.x_a + coef_bb * ep.x_b * ep.x_b + coef_ab * ep.x_a * ep.x_b;
}

double phase_integral_Y(const ParticularSolution& x_p, const Scenario& sc, double t0,
                        double t, const QuadratureOptions& quad) {
    sc.validate_time(t0);
    sc.validate_time(t);
    return integrate(
        [&](double z) { return 0.5 * x_p.x.value(z) * sc.evaluate(z).F; }, t0, t, quad);
}

double action_F_tilde(const ShiftedBasis& shifted, const ParticularSolution& x_p,
                      const Endpoints& ep, const Scenario& sc) {
    check_endpoints(shifted, ep);
    const ClassicalPath path(shifted, x_p, ep);  // performs the caustic check
    auto boundary = [&](double t, double x_end) {
        const double m = sc.evaluate(t).M;
        const double eta = x_end - x_p.x.value(t);
        const double eta_dot = path.deriv(t) - x_p.x.deriv(t);
        return 0.5 * m * eta * eta_dot + m * x_p.x.deriv(t) * eta;
    };
    return boundary(ep.t_b, ep.x_b) - boundary(ep.t_a, ep.x_a);
}

double action_G_tilde(const ShiftedBasis& shifted, const ParticularSolution& x_p,
                      const Endpoints& ep, const Scenario& sc) {
    const double base = action_F_tilde(shifted, x_p, ep, sc);
    const Coeffs ca = sc.evaluate(ep.t_a), cb = sc.evaluate(ep.t_b);
    return base + cb.M * cb.a * ep.x_b * ep.x_b - ca.M * ca.a * ep.x_a * ep.x_a +
           cb.b * ep.x_b - ca.b * ep.x_a;
}

double delta_S1(const ParticularSolution& x_p, const Scenario& sc, double t0, double t,
                const QuadratureOptions& quad) {
    const double m = sc.evaluate(t).M;
    return 0.5 * m * x_p.x.deriv(t) * x_p.x.value(t) + phase_integral_Y(x_p, sc, t0, t, quad);
}

double action_numeric(const Scenario& sc, const std::function<double(double)>& x,
                      const std::function<double(double)>& xdot, double t_a, double t_b,
                      Variant variant, const QuadratureOptions& quad) {
    sc.validate_time(t_a);
    sc.validate_time(t_b);
    auto lagrangian = [&](double t) {
        const Coeffs c = sc.evaluate(t);
        const double xx = x(t), xd = xdot(t);
        double L = 0.5 * c.M * xd * xd - 0.5 * c.M * c.w2 * xx * xx;
        if (variant != Variant::S) L += c.F * xx;
        if (variant == Variant::G) {
            L += (c.Mdot * c.a + c.M * c.adot) * xx * xx + 2.0 * c.M * c.a * xx * xd;
            L += c.bdot * xx + c.b * xd;
            L += c.f;
        }
        return L;
    };
    return integrate(lagrangian, t_a, t_b, quad);
}

double action_numeric(const Scenario& sc, const ClassicalPath& path, Variant variant,
                      const QuadratureOptions& quad) {
    return action_numeric(
        sc, [&](double t) { return path.value(t); }, [&](double t) { return path.deriv(t); },
        path.endpoints().t_a, path.endpoints().t_b, variant, quad);
}

}  // namespace quadprop
