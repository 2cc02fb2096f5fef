#include "quadprop/oracle.hpp"

#include <cmath>

namespace quadprop {

namespace {

struct EffCoeffs {
    double M, a, b, f, c, d;
};

EffCoeffs effective_for(const Scenario& sc, Variant variant, double t) {
    const Coeffs cc = sc.evaluate(t);
    EffCoeffs e{cc.M, 0.0, 0.0, 0.0, cc.w2, 0.0};
    if (variant == Variant::F) e.d = -cc.F;
    if (variant == Variant::G) {
        const DerivedCoefficients dc = sc.derived(t);
        e.a = cc.a;
        e.b = cc.b;
        e.f = cc.f;
        e.c = dc.c;
        e.d = dc.d;
    }
    return e;
}

}  // namespace

ComplexGridFunction hamiltonian_apply(const Scenario& sc, const ComplexGridFunction& psi,
                                      double t, Variant variant) {
    psi.validate();
    const EffCoeffs e = effective_for(sc, variant, t);
    const double hbar = sc.hbar();
    const UniformGrid& g = psi.grid;
    const std::vector<complex> d1 = deriv1_4th(g, psi.values);
    const std::vector<complex> d2 = deriv2_4th(g, psi.values);

    ComplexGridFunction out;
    out.grid = g;
    out.t = t;
    out.values.resize(g.n);
    const complex ih(0.0, hbar);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.x(j);
        complex v = -hbar * hbar / (2.0 * e.M) * d2[j] +
                    (0.5 * e.M * e.c * x * x + e.d * x +
                     e.b * e.b / (2.0 * e.M) - e.f) *
                        psi.values[j];
        if (e.a != 0.0) v += ih * e.a * (psi.values[j] + 2.0 * x * d1[j]);
        if (e.b != 0.0) v += ih * (e.b / e.M) * d1[j];
        out.values[j] = v;
    }
    return out;
}

ResidualReport schrodinger_residual(const std::function<complex(double, double)>& psi_fn,
                                    const Scenario& sc, const UniformGrid& grid, double t,
                                    double dt, Variant variant) {
    if (!(dt > 0)) throw ValidationError("time step must be positive");
    sc.validate_time(t - 2.0 * dt);
    sc.validate_time(t + 2.0 * dt);
    grid.validate();

    auto sample = [&](double tt) {
        return sample_grid(grid, tt, [&](double x) { return psi_fn(x, tt); });
    };
    const ComplexGridFunction pm2 = sample(t - 2.0 * dt);
    const ComplexGridFunction pm1 = sample(t - dt);
    const ComplexGridFunction p0 = sample(t);
    const ComplexGridFunction pp1 = sample(t + dt);
    const ComplexGridFunction pp2 = sample(t + 2.0 * dt);

    const ComplexGridFunction hp = hamiltonian_apply(sc, p0, t, variant);
    const double hbar = sc.hbar();

    ComplexGridFunction resid;
    resid.grid = grid;
    resid.t = t;
    resid.values.resize(grid.n);
    double linf_r = 0, linf_p = 0;
    for (std::size_t j = 0; j < grid.n; ++j) {
        const complex dpsi_dt = (-pp2.values[j] + 8.0 * pp1.values[j] - 8.0 * pm1.values[j] +
                                 pm2.values[j]) /
                                (12.0 * dt);
        resid.values[j] = complex(0.0, hbar) * dpsi_dt - hp.values[j];
        linf_r = std::max(linf_r, std::abs(resid.values[j]));
        linf_p = std::max(linf_p, std::abs(p0.values[j]));
    }

    ResidualReport rep;
    const double norm = l2_norm(p0);
    rep.l2_residual = norm > 0 ? l2_norm(resid) / norm : 0.0;
    rep.linf_residual = linf_p > 0 ? linf_r / linf_p : 0.0;
    rep.edge_mass = edge_mass(p0);
    rep.dt = dt;
    rep.n_points = grid.n;
    return rep;
}

namespace {

// Solve the tridiagonal system (sub, diag, sup) x = rhs in place.
void thomas_solve(std::vector<complex>& sub, std::vector<complex>& diag,
                  std::vector<complex>& sup, std::vector<complex>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t k = 1; k < n; ++k) {
        const complex m = sub[k] / diag[k - 1];
        diag[k] -= m * sup[k - 1];
        rhs[k] -= m * rhs[k - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) rhs[k] = (rhs[k] - sup[k] * rhs[k + 1]) / diag[k];
}

}  // namespace

ComplexGridFunction crank_nicolson_evolve(const Scenario& sc, const ComplexGridFunction& psi0,
                                          double t_a, double t_b, int n_steps,
                                          Variant variant) {
    psi0.validate();
    if (n_steps < 1) throw ValidationError("need at least one evolution step");
    sc.validate_time(t_a);
    sc.validate_time(t_b);
    if (!(t_b > t_a)) throw DomainError("evolution window must have t_b > t_a");

    const UniformGrid& g = psi0.grid;
    const std::size_t n = g.n;
    const std::size_t ni = n - 2;  // interior unknowns (Dirichlet edges)
    const double dx = g.dx();
    const double dt = (t_b - t_a) / double(n_steps);
    const double hbar = sc.hbar();
    const complex ih(0.0, hbar);

    std::vector<complex> psi = psi0.values;
    psi.front() = 0;
    psi.back() = 0;

    std::vector<complex> hd(ni), hu(ni), hl(ni);
    std::vector<complex> sub(ni), dia(ni), sup(ni), rhs(ni);

    for (int step = 0; step < n_steps; ++step) {
        const double t_mid = t_a + (double(step) + 0.5) * dt;
        const EffCoeffs e = effective_for(sc, variant, t_mid);
        const double kin = hbar * hbar / (e.M * dx * dx);

        for (std::size_t k = 0; k < ni; ++k) {
            const std::size_t j = k + 1;
            const double x = g.x(j);
            hd[k] = kin + 0.5 * e.M * e.c * x * x + e.d * x + e.b * e.b / (2.0 * e.M) - e.f;
            const double xr = g.x(j + 1), xl = g.x(j - 1);
            hu[k] = -0.5 * kin + ih * e.a * (x + xr) / (2.0 * dx) +
                    ih * (e.b / e.M) / (2.0 * dx);
            hl[k] = -0.5 * kin - ih * e.a * (x + xl) / (2.0 * dx) -
                    ih * (e.b / e.M) / (2.0 * dx);
        }

        const complex lam = complex(0.0, dt / (2.0 * hbar));
        for (std::size_t k = 0; k < ni; ++k) {
            const std::size_t j = k + 1;
            complex hpsi = hd[k] * psi[j];
            if (j > 1) hpsi += hl[k] * psi[j - 1];
            if (j < n - 2) hpsi += hu[k] * psi[j + 1];
            rhs[k] = psi[j] - lam * hpsi;
            dia[k] = 1.0 + lam * hd[k];
            sub[k] = lam * hl[k];
            sup[k] = lam * hu[k];
        }
        thomas_solve(sub, dia, sup, rhs);
        for (std::size_t k = 0; k < ni; ++k) psi[k + 1] = rhs[k];
    }

    ComplexGridFunction out;
    out.grid = g;
    out.t = t_b;
    out.values = std::move(psi);
    return out;
}

}  // namespace quadprop
