#include "quadprop/observables.hpp"

#include <cmath>

namespace quadprop {

MomentSet moments(const ComplexGridFunction& bra, const ComplexGridFunction& ket,
                  double hbar) {
    bra.validate();
    ket.validate();
    if (!(bra.grid == ket.grid))
        throw ValidationError("moments need bra and ket on the same grid");

    const UniformGrid& g = bra.grid;
    const std::vector<complex> dket = deriv1_4th(g, ket.values);
    const std::vector<complex> d2ket = deriv2_4th(g, ket.values);

    MomentSet m;
    complex overlap = 0, mx = 0, mx2 = 0, mp = 0, mp2 = 0;
    for (std::size_t j = 0; j < g.n; ++j) {
        const double w = (j == 0 || j == g.n - 1) ? 0.5 : 1.0;
        const double x = g.x(j);
        const complex cb = std::conj(bra.values[j]) * w;
        overlap += cb * ket.values[j];
        mx += cb * x * ket.values[j];
        mx2 += cb * x * x * ket.values[j];
        mp += cb * complex(0.0, -hbar) * dket[j];
        mp2 += cb * (-hbar * hbar) * d2ket[j];
    }
    const double dx = g.dx();
    m.overlap = overlap * dx;
    m.mean_x = mx * dx;
    m.mean_x2 = mx2 * dx;
    m.mean_p = mp * dx;
    m.mean_p2 = mp2 * dx;
    m.edge_mass = std::max(edge_mass(bra), edge_mass(ket));
    return m;
}

UncertaintyDiagonal uncertainty_diagonal(const StateFamily& family, int m, double t) {
    if (m < 0) throw ValidationError("level index must be nonnegative");
    const Scenario& sc = family.scenario();
    const Coeffs c = sc.evaluate(t);
    const double hbar = sc.hbar();
    const RhoTheta& pol = family.polar();
    const double rho = pol.rho(t), rho_dot = pol.rho_dot(t), th_dot = pol.theta_dot(t);
    const double omega = family.omega();
    const double mh = (double(m) + 0.5) * (double(m) + 0.5) * hbar * hbar;

    UncertaintyDiagonal r;
    const double q_uv = (2.0 * c.M * c.a * rho * rho + c.M * rho * rho_dot) / omega;
    r.form_uv = mh * (1.0 + q_uv * q_uv);
    const double q_pol = (2.0 * c.a + rho_dot / rho) / th_dot;
    r.form_polar = mh * (1.0 + q_pol * q_pol);
    return r;
}

UncertaintyOffdiag uncertainty_offdiag(const StateFamily& family, int m, int offset,
                                       double t) {
    if (m < 0) throw ValidationError("level index must be nonnegative");
    if (offset != 1 && offset != 2)
        throw ValidationError("off-diagonal products are tabulated for offsets 1 and 2");
    const Scenario& sc = family.scenario();
    const Coeffs c = sc.evaluate(t);
    const double hbar = sc.hbar();
    const RhoTheta& pol = family.polar();
    const double rho = pol.rho(t), rho_dot = pol.rho_dot(t), th_dot = pol.theta_dot(t);
    const double theta = pol.theta(t);
    const double omega = family.omega();
    const complex z(pol.u().value(t), pol.v().value(t));  // rho e^{i theta}
    const complex e_it = std::exp(complex(0.0, theta));
    const double md = double(m);

    const complex q_uv = 2.0 * c.M * c.a + c.M * rho_dot / rho + complex(0.0, omega / (rho * rho));
    const complex q_pol = 2.0 * c.a + rho_dot / rho + complex(0.0, th_dot);

    UncertaintyOffdiag r;
    if (offset == 2) {
        const double pref = (md + 2.0) * (md + 1.0) * (hbar / (2.0 * omega)) * (hbar / (2.0 * omega));
        r.form_uv = pref * z * z * z * z * q_uv * q_uv;
        const double pref_p = (md + 1.0) * (md + 2.0) / 4.0 * hbar * hbar;
        r.form_polar = pref_p * std::pow(e_it, 4) / (th_dot * th_dot) * q_pol * q_pol;
        return r;
    }

    const double xp = family.x_p(t);
    const double pp = family.classical_momentum(t);

    {
        const double lam = (md + 1.0) * hbar / omega;
        const complex first =
            2.0 * std::sqrt(2.0 * omega) * xp / (std::sqrt((md + 1.0) * hbar) * z) - 1.0;
        const complex last = pp - 0.5 * std::sqrt((md + 1.0) * hbar / (2.0 * omega)) * z * q_uv;
        r.form_uv = 1.0 / std::sqrt(2.0) * std::pow(lam, 1.5) * z * z * z * first * q_uv * last;
    }
    {
        const double pref = (md + 1.0) * (md + 1.0) / 4.0 * hbar * hbar;
        const complex first =
            1.0 - 2.0 * std::sqrt(2.0 * c.M * th_dot) * xp / std::sqrt((md + 1.0) * hbar) /
                      e_it;
        const complex last =
            q_pol - 2.0 * std::sqrt(2.0 * th_dot) * pp /
                        (std::sqrt((md + 1.0) * c.M * hbar) * e_it);
        r.form_polar =
            pref * std::pow(e_it, 4) / (th_dot * th_dot) * first * q_pol * last;
    }
    return r;
}

complex uncertainty_product_quadrature(const StateFamily& family, Variant variant, int m,
                                       int offset, const UniformGrid& grid, double t) {
    if (m < 0 || offset < 0) throw ValidationError("bad level/offset");
    const double hbar = family.scenario().hbar();
    const ComplexGridFunction ket = family.psi_grid(variant, m, grid, t);
    const ComplexGridFunction bra = family.psi_grid(variant, m + offset, grid, t);

    const MomentSet diag = moments(ket, ket, hbar);
    const double mean_x = diag.mean_x.real();
    const double mean_p = diag.mean_p.real();

    const MomentSet off = moments(bra, ket, hbar);
    const complex dx2 =
        off.mean_x2 - 2.0 * mean_x * off.mean_x + mean_x * mean_x * off.overlap;
    const complex dp2 =
        off.mean_p2 - 2.0 * mean_p * off.mean_p + mean_p * mean_p * off.overlap;
    return dx2 * dp2;
}

}  // namespace quadprop
