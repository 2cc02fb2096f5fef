#include "quadprop/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "quadprop/common.hpp"
#include "quadprop/kernel.hpp"
#include "quadprop/observables.hpp"
#include "quadprop/oracle.hpp"
#include "quadprop/states.hpp"

namespace quadprop {

bool CriterionResult::passed() const {
    if (checks.empty()) return false;
    for (const CheckResult& c : checks)
        if (!c.informational && !c.pass) return false;
    return true;
}

double CriterionResult::worst_margin() const {
    double worst = 0;
    for (const CheckResult& c : checks)
        if (!c.informational && c.tolerance > 0)
            worst = std::max(worst, c.measured / c.tolerance);
    return worst;
}

namespace {

void add(CriterionResult& cr, std::string name, double measured, double tolerance,
         std::string detail = {}, bool informational = false) {
    CheckResult c;
    c.name = std::move(name);
    c.measured = measured;
    c.tolerance = tolerance;
    c.detail = std::move(detail);
    c.informational = informational;
    c.pass = std::isfinite(measured) && measured <= tolerance;
    cr.checks.push_back(std::move(c));
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

struct PresetCase {
    const char* name;
    std::map<std::string, double> params;
    Variant natural;
};

const std::vector<PresetCase>& all_presets() {
    static const std::vector<PresetCase> cases = {
        {"sho", {}, Variant::S},
        {"free", {}, Variant::S},
        {"caldirola-kanai", {{"gamma", 0.25}}, Variant::S},
        {"paul-trap", {{"eps", 0.2}, {"nu", 2.5}}, Variant::S},
        {"driven-sho", {{"F0", 1.0}, {"nu", 2.0}}, Variant::F},
        {"full-quadratic", {}, Variant::G},
    };
    return cases;
}

Scenario load(const PresetCase& pc, double t_min = 0.0, double t_max = 6.0) {
    return Scenario::preset(pc.name, pc.params, 1.0, t_min, t_max);
}

// ---------------------------------------------------------------- criterion 1

void criterion_kernel_uniqueness(CriterionResult& cr, bool corrupt) {
    cr.title = "propagator is independent of basis and particular-solution choices";
    const std::vector<PresetCase> presets = {
        {"sho", {}, Variant::S},
        {"caldirola-kanai", {{"gamma", 0.25}}, Variant::S},
        {"driven-sho", {{"F0", 1.0}, {"nu", 2.0}}, Variant::F},
        {"full-quadratic", {}, Variant::G},
    };
    struct BasisIC {
        InitialConditions u, v;
        double anchor;
    };
    const std::vector<BasisIC> basis_ics = {
        {{1.0, 0.0}, {0.0, 1.0}, 0.0},
        {{1.0, -0.3}, {0.4, 1.0}, 0.0},
        {{0.7, 0.2}, {-0.5, 0.8}, 1.0},
    };
    const double slopes[2] = {0.0, 0.5};
    const std::vector<std::pair<double, double>> windows = {
        {0.1, 0.9}, {0.3, 1.4}, {0.5, 2.0}};

    for (const PresetCase& pc : presets) {
        const Scenario sc = load(pc);
        std::vector<ClassicalBasis> bases;
        for (const BasisIC& ic : basis_ics)
            bases.push_back(make_basis(sc, ic.u, ic.v, ic.anchor));

        double worst = 0;
        for (const auto& [t_a, t_b] : windows) {
            std::vector<complex> ref;
            int combo = 0;
            for (const ClassicalBasis& b : bases) {
                const ShiftedBasis shifted = shift_basis(b, sc, t_a);
                for (double slope : slopes) {
                    const KernelEvaluator ker(sc, shifted,
                                              solve_particular(sc, t_a, slope),
                                              pc.natural);
                    std::vector<complex> vals;
                    vals.reserve(21 * 21);
                    for (int i = 0; i < 21; ++i)
                        for (int j = 0; j < 21; ++j) {
                            const double xa = -2.0 + 0.2 * i, xb = -2.0 + 0.2 * j;
                            complex K = ker(xa, xb, t_b);
                            if (corrupt && combo == 1) K *= 1.0001;
                            vals.push_back(K);
                        }
                    if (ref.empty()) {
                        ref = std::move(vals);
                    } else {
                        double scale = 0;
                        for (const complex& r : ref) scale = std::max(scale, std::abs(r));
                        for (std::size_t k = 0; k < ref.size(); ++k)
                            worst = std::max(worst, std::abs(vals[k] - ref[k]) / scale);
                    }
                    ++combo;
                }
            }
        }
        add(cr, std::string(pc.name) + ": max pairwise deviation (3 bases x 2 slopes)",
            worst, 1e-8, "21x21 endpoint grid, 3 windows");
    }
}

// ---------------------------------------------------------------- criterion 2

void criterion_state_residuals(CriterionResult& cr, bool corrupt) {
    cr.title = "constructed wave functions satisfy their evolution equations";
    const double t_ref = 0.2, t_eval = 1.1, dt = 1e-4;
    for (const PresetCase& pc : all_presets()) {
        const Scenario sc = load(pc);
        const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, t_ref);
        const StateFamily fam(sc, b, solve_particular(sc, t_ref), t_ref);

        const double rho = fam.polar().rho(t_eval);
        const double sigma0 = std::sqrt(sc.hbar() * rho * rho / (2.0 * fam.omega()));
        const double xc = fam.x_p(t_eval);
        const UniformGrid grid{xc - 8.0 * sigma0, xc + 8.0 * sigma0, 1024};

        double worst = 0;
        for (Variant v : {Variant::S, Variant::F, Variant::G}) {
            for (int n : {0, 1, 2, 5}) {
                const double stretch = corrupt ? 1.05 : 1.0;
                const ResidualReport r = schrodinger_residual(
                    [&, v, n](double x, double t) {
                        return fam.psi(v, n, xc + (x - xc) * stretch, t);
                    },
                    sc, grid, t_eval, dt, v);
                worst = std::max(worst, r.l2_residual);
            }
        }
        add(cr, std::string(pc.name) + ": max normalized L2 residual over variants, n in {0,1,2,5}",
            worst, 1e-5, "1024-point grid, 8 ground-widths, dt=1e-4");
    }
}

// ---------------------------------------------------------------- criterion 3

void criterion_spectral_sum(CriterionResult& cr, bool corrupt) {
    cr.title = "truncated eigenfunction expansion reproduces the propagator";
    const std::vector<PresetCase> presets = {
        {"sho", {}, Variant::S},
        {"caldirola-kanai", {{"gamma", 0.25}}, Variant::S},
    };
    const double t_a = 0.0, t_b = 1.0;
    for (const PresetCase& pc : presets) {
        const Scenario sc = load(pc);
        const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, t_a);
        const KernelEvaluator ker(sc, shift_basis(b, sc, t_a),
                                  solve_particular(sc, t_a), Variant::S);
        auto max_dev = [&](int n_max, int half_points) {
            double dev = 0;
            const double step = 4.0 / half_points;
            for (int i = -half_points; i <= half_points; ++i)
                for (int j = -half_points; j <= half_points; ++j) {
                    const double xa = step * i, xb = step * j;
                    complex sum = kernel_spectral_sum(b, sc, n_max, xa, xb, t_a, t_b);
                    if (corrupt) sum *= 1.1;
                    dev = std::max(dev, std::abs(sum - ker(xa, xb, t_b)));
                }
            return dev;
        };
        const double dev60 = max_dev(60, 8);
        add(cr, std::string(pc.name) + ": max |expansion(60) - closed| on |x|<=4", dev60,
            1e-6,
            "truncation error of the oscillating tail; see the convergence-rate "
            "check below");
        const double dev240 = max_dev(240, 4);
        add(cr, std::string(pc.name) + ": deviation ratio n_max 240 vs 60", dev240 / dev60,
            0.7,
            "expected ~0.5 for an n^(-1/2) tail (" + fmt(dev240) + " vs " + fmt(dev60) +
                ")",
            true);
    }
}

// ---------------------------------------------------------------- criterion 4

enum class ShortTimeScan { Transverse, Diagonal };

// Log-log slope of the max relative deviation from the free short-time form
// against T. Transverse scans sample x_b - x_a up to 3 sqrt(hbar T / M);
// diagonal scans keep x_a = x_b and vary the common endpoint.
double short_time_slope(const Scenario& sc, const KernelEvaluator& ker, double t_a,
                        ShortTimeScan scan, bool corrupt) {
    const double M_a = sc.evaluate(t_a).M;
    std::vector<double> logT, logD;
    for (double T : {1e-2, 1e-3, 1e-4}) {
        const double w = std::sqrt(sc.hbar() * T / M_a);
        double dev = 0;
        for (int s = -10; s <= 10; ++s) {
            const double x_a = scan == ShortTimeScan::Transverse ? 0.3 : 0.1 * s;
            const double x_b =
                scan == ShortTimeScan::Transverse ? x_a + 0.3 * s * w : x_a;
            complex ref = short_time_kernel(sc, t_a, T, x_a, x_b);
            if (corrupt) ref *= std::exp(complex(0.0, 0.01));
            dev = std::max(dev, std::abs(ker(x_a, x_b, t_a + T) - ref) / std::abs(ref));
        }
        logT.push_back(std::log(T));
        logD.push_back(std::log(dev));
    }
    const double n = double(logT.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < logT.size(); ++k) {
        sx += logT[k];
        sy += logD[k];
        sxx += logT[k] * logT[k];
        sxy += logT[k] * logD[k];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void criterion_short_time(CriterionResult& cr, bool corrupt) {
    cr.title = "propagator approaches the free short-time form linearly in T";
    const std::vector<PresetCase> presets = {
        {"sho", {}, Variant::S},
        {"caldirola-kanai", {{"gamma", 0.25}}, Variant::S},
        {"driven-sho", {{"F0", 1.0}, {"nu", 2.0}}, Variant::F},
        {"full-quadratic", {}, Variant::G},
    };
    const double t_a = 0.4;
    for (const PresetCase& pc : presets) {
        const Scenario sc = load(pc);
        const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, t_a);
        const KernelEvaluator ker(sc, shift_basis(b, sc, t_a),
                                  solve_particular(sc, t_a), pc.natural);

        // The general variant carries momentum-boost phases linear in
        // x_b - x_a, so its transverse deviation is O(sqrt(T)) by scaling;
        // the convergence claim itself is tested on coincident endpoints
        // where those phases drop out, and the transverse half-order is
        // recorded below as expected behavior rather than asserted.
        const bool boosted = pc.natural == Variant::G;
        const ShortTimeScan scan =
            boosted ? ShortTimeScan::Diagonal : ShortTimeScan::Transverse;
        const double slope = short_time_slope(sc, ker, t_a, scan, corrupt);
        add(cr,
            std::string(pc.name) + ": |log-log slope - 1| of deviation vs T (" +
                (boosted ? "diagonal" : "transverse") + " scan)",
            std::abs(slope - 1.0), 0.2, "slope " + fmt(slope) + " over T in {1e-2,1e-3,1e-4}");
        if (boosted) {
            const double tslope =
                short_time_slope(sc, ker, t_a, ShortTimeScan::Transverse, corrupt);
            add(cr, std::string(pc.name) + ": transverse scan slope (boost phases)",
                tslope, 0.0,
                "~0.5 expected: phases linear in x_b-x_a are O(sqrt(T)) on the "
                "sqrt(T)-scaled neighborhood",
                true);
        }
    }
}

// ---------------------------------------------------------------- criterion 5

void criterion_coefficient_odes(CriterionResult& cr, bool corrupt) {
    cr.title = "extracted propagator coefficients obey the closed evolution system";
    const double t_a = 0.3, t_b = 1.2;
    const double h_t = corrupt ? 0.3 : 1e-4;
    for (const PresetCase& pc : all_presets()) {
        const Scenario sc = load(pc);
        const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, t_a);
        const ShiftedBasis shifted = shift_basis(b, sc, t_a);
        const ParticularSolution xp = solve_particular(sc, t_a);

        double worst = 0;
        std::vector<Variant> variants = {Variant::G};
        if (std::string(pc.name) == "sho") variants.push_back(Variant::S);
        if (std::string(pc.name) == "driven-sho") variants.push_back(Variant::F);
        for (Variant v : variants) {
            const KernelEvaluator ker(sc, shifted, xp, v);
            worst = std::max(worst, check_coefficient_odes(ker, t_b, h_t).max_residual());
        }
        add(cr, std::string(pc.name) + ": max coefficient-evolution residual", worst, 1e-5,
            "finite differences at t_b=1.2, h=" + fmt(h_t));
    }
}

// ---------------------------------------------------------------- criterion 6

ComplexGridFunction displaced_gaussian(const UniformGrid& grid, double x0, double t) {
    return sample_grid(grid, t, [&](double x) {
        const double xc = x0 * std::cos(t);
        const double ph =
            -(0.5 * t + x * x0 * std::sin(t) - 0.25 * x0 * x0 * std::sin(2.0 * t));
        return std::pow(M_PI, -0.25) * std::exp(-0.5 * (x - xc) * (x - xc)) *
               std::exp(complex(0.0, ph));
    });
}

void criterion_oracle_agreement(CriterionResult& cr, bool corrupt) {
    cr.title = "implicit-midpoint evolution agrees with closed states and kernel "
               "propagation";
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const UniformGrid grid{-8.0, 8.0, 1024};
    const double stretch = corrupt ? 1.05 : 1.0;

    // stationary ground state over one unit of time
    const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, 0.0);
    const StateFamily fam(sc, b, std::nullopt, 0.0);
    ComplexGridFunction g0 = fam.psi_grid(Variant::S, 0, grid, 0.0);
    if (corrupt)
        for (std::size_t j = 0; j < grid.n; ++j)
            g0.values[j] = std::pow(M_PI, -0.25) *
                           std::exp(-0.5 * stretch * grid.x(j) * grid.x(j));
    const ComplexGridFunction cn0 = crank_nicolson_evolve(sc, g0, 0.0, 1.0, 4096,
                                                          Variant::S);
    add(cr, "stationary state: |CN(4096) - closed| in L2",
        l2_distance(cn0, fam.psi_grid(Variant::S, 0, grid, 1.0)), 1e-3);

    // displaced packet: accuracy and self-convergence order
    const ComplexGridFunction p0 = displaced_gaussian(grid, 1.0, 0.0);
    const ComplexGridFunction c1024 = crank_nicolson_evolve(sc, p0, 0.0, 1.0, 1024,
                                                            Variant::S);
    const ComplexGridFunction c2048 = crank_nicolson_evolve(sc, p0, 0.0, 1.0, 2048,
                                                            Variant::S);
    const ComplexGridFunction c4096 = crank_nicolson_evolve(sc, p0, 0.0, 1.0, 4096,
                                                            Variant::S);
    add(cr, "displaced packet: |CN(4096) - closed| in L2",
        l2_distance(c4096, displaced_gaussian(grid, 1.0, 1.0)), 1e-3);
    const double r12 = l2_distance(c1024, c2048) / l2_distance(c2048, c4096);
    add(cr, "time-step self-convergence ratio off 4.0", std::abs(r12 - 4.0), 0.4,
        "ratio " + fmt(r12) + ", expected 4 for a 2nd-order stepper");

    // independent route: kernel quadrature on a driven system
    const Scenario dr =
        Scenario::preset("driven-sho", {{"F0", 1.0}, {"nu", 2.0}}, 1.0, 0.0, 9.0);
    const ClassicalBasis bd = make_basis(dr, {1.0, 0.0}, {0.0, 1.0}, 0.0);
    const StateFamily fd(dr, bd, solve_particular(dr, 0.0), 0.0);
    ComplexGridFunction d0 = fd.psi_grid(Variant::F, 0, grid, 0.0);
    if (corrupt)
        for (std::size_t j = 0; j < grid.n; ++j)
            d0.values[j] *= std::exp(complex(0.0, 0.05 * grid.x(j) * grid.x(j)));
    const ComplexGridFunction cnd = crank_nicolson_evolve(dr, d0, 0.0, 1.3, 6000,
                                                          Variant::F);
    const KernelEvaluator kd(dr, shift_basis(bd, dr, 0.0), solve_particular(dr, 0.0),
                             Variant::F);
    add(cr, "driven packet: |CN(6000) - kernel quadrature| in L2",
        l2_distance(cnd, propagate(kd, d0, 1.3).psi), 1e-3);
}

// ---------------------------------------------------------------- criterion 7

void criterion_unitary_map(CriterionResult& cr, bool corrupt) {
    cr.title = "pure-phase map carries driven-oscillator states onto the general "
               "system's states";
    const Scenario fq = Scenario::preset("full-quadratic", {}, 1.0, 0.0, 6.0);
    const double t_0 = 0.3;
    const ClassicalBasis b = make_basis(fq, {1.0, 0.0}, {0.0, 1.0}, t_0);
    const StateFamily fam(fq, b, solve_particular(fq, t_0), t_0);
    const UniformGrid grid{-10.0, 10.0, 1024};

    double worst = 0;
    for (double t : {0.5, 0.9, 1.3, 1.7, 2.1}) {
        const double t_ref = corrupt ? t_0 + 0.2 : t_0;
        for (int n = 0; n <= 5; ++n) {
            const ComplexGridFunction g = fam.psi_grid(Variant::G, n, grid, t);
            const ComplexGridFunction mapped =
                apply_unitary_U(fq, fam.psi_grid(Variant::F, n, grid, t), t, t_ref);
            double dev = 0;
            for (std::size_t j = 0; j < grid.n; ++j)
                dev = std::max(dev, std::abs(g.values[j] - mapped.values[j]));
            worst = std::max(worst, dev);
        }
    }
    add(cr, "max pointwise |psi_G - U psi_F| for n<=5 at 5 times", worst, 1e-8);
}

// ---------------------------------------------------------------- criterion 8

void criterion_uncertainty(CriterionResult& cr, bool corrupt) {
    cr.title = "uncertainty products: parametrization equality and quadrature "
               "agreement";
    // the two printed parametrizations agree on every preset
    double worst_eq = 0;
    for (const PresetCase& pc : all_presets()) {
        const Scenario sc = load(pc);
        const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, 0.3);
        const StateFamily fam(sc, b, solve_particular(sc, 0.3), 0.3);
        for (int m : {0, 1, 2}) {
            const UncertaintyDiagonal d = uncertainty_diagonal(fam, m, 1.1);
            const double pol = corrupt ? d.form_polar * 1.01 : d.form_polar;
            worst_eq = std::max(worst_eq, std::abs(pol - d.form_uv) / std::abs(d.form_uv));
            for (int off : {1, 2}) {
                const UncertaintyOffdiag o = uncertainty_offdiag(fam, m, off, 1.1);
                worst_eq = std::max(worst_eq,
                                    std::abs(o.form_polar - o.form_uv) / std::abs(o.form_uv));
            }
        }
    }
    add(cr, "max relative gap between the two printed parametrizations", worst_eq, 1e-10,
        "diagonal and offset-1/2 products, all presets, m in {0,1,2}");

    // quadrature agreement on the undriven scenarios
    const std::vector<PresetCase> undriven = {
        {"sho", {}, Variant::S},
        {"free", {}, Variant::S},
        {"caldirola-kanai", {{"gamma", 0.25}}, Variant::S},
        {"paul-trap", {{"eps", 0.2}, {"nu", 2.5}}, Variant::S},
    };
    const UniformGrid grid{-12.0, 12.0, 4096};
    double worst_diag = 0, worst_off2 = 0;
    for (const PresetCase& pc : undriven) {
        const Scenario sc = load(pc);
        const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, 0.3);
        const StateFamily fam(sc, b, std::nullopt, 0.3);
        for (int m : {0, 1}) {
            const UncertaintyDiagonal d = uncertainty_diagonal(fam, m, 1.1);
            const complex qd =
                uncertainty_product_quadrature(fam, Variant::G, m, 0, grid, 1.1);
            worst_diag = std::max(worst_diag, std::abs(qd - d.form_uv) / std::abs(d.form_uv));
            const UncertaintyOffdiag o = uncertainty_offdiag(fam, m, 2, 1.1);
            const complex q2 =
                uncertainty_product_quadrature(fam, Variant::G, m, 2, grid, 1.1);
            worst_off2 = std::max(worst_off2, std::abs(q2 - o.form_uv) / std::abs(o.form_uv));
        }
    }
    add(cr, "diagonal product vs quadrature (undriven presets)", worst_diag, 1e-5);
    add(cr, "offset-2 product vs quadrature (undriven presets)", worst_off2, 1e-5);

    // offset-1: the printed forms are internally consistent (checked above) but
    // are NOT the matrix-element product; report the gap without judging it.
    {
        const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
        const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, 0.0);
        const StateFamily fam(sc, b, std::nullopt, 0.0);
        const UncertaintyOffdiag o = uncertainty_offdiag(fam, 0, 1, 0.7);
        const complex q = uncertainty_product_quadrature(fam, Variant::S, 0, 1, grid, 0.7);
        add(cr, "offset-1 printed form vs quadrature (known discrepancy)",
            std::abs(o.form_uv - q), 0.0,
            "quadrature gives " + fmt(std::abs(q)) + " (parity-forbidden), printed form " +
                fmt(std::abs(o.form_uv)) + "; reported, not asserted",
            true);
    }
}

// ---------------------------------------------------------------- criterion 9

void criterion_classical_invariants(CriterionResult& cr, bool corrupt) {
    cr.title = "classical layer invariants: conserved bracket, polar identity, "
               "auxiliary equations";
    for (const PresetCase& pc : all_presets()) {
        const Scenario sc = load(pc);
        const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, 0.2);
        add(cr, std::string(pc.name) + ": conserved-bracket drift",
            wronskian_drift(sc, b.u, b.v, b.omega), 1e-8);

        const RhoTheta pol = rho_theta(sc, b);
        double worst_id = 0, worst_ode = 0;
        const double h = 1e-3;
        for (int k = 0; k < 25; ++k) {
            const double t = 0.4 + k * 0.2;
            const Coeffs c = sc.evaluate(t);
            const double rho = pol.rho(t), rho_dot = pol.rho_dot(t);
            const double th_dot = pol.theta_dot(t) * (corrupt ? 1.001 : 1.0);
            worst_id = std::max(worst_id,
                                std::abs(c.M * rho * rho * th_dot - b.omega) /
                                    std::abs(b.omega));

            auto d4 = [&](auto&& f, double at) {
                return (-f(at + 2 * h) + 8.0 * f(at + h) - 8.0 * f(at - h) +
                        f(at - 2 * h)) /
                       (12.0 * h);
            };
            const double th_dd = d4([&](double s) { return pol.theta_dot(s); }, t);
            const double rho_dd = d4([&](double s) { return pol.rho_dot(s); }, t);
            const double t1 = th_dd, t2 = 2.0 * (rho_dot / rho) * pol.theta_dot(t),
                         t3 = (c.Mdot / c.M) * pol.theta_dot(t);
            const double den_th = std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)});
            worst_ode = std::max(worst_ode, std::abs(t1 + t2 + t3) / den_th);

            const double r1 = rho_dd, r2 = (c.Mdot / c.M) * rho_dot,
                         r3 = -rho * pol.theta_dot(t) * pol.theta_dot(t),
                         r4 = c.w2 * rho;
            const double den_r = std::max({1.0, std::abs(r1), std::abs(r3), std::abs(r4)});
            worst_ode = std::max(worst_ode, std::abs(r1 + r2 + r3 + r4) / den_r);
        }
        add(cr, std::string(pc.name) + ": bracket = M rho^2 theta_dot identity", worst_id,
            1e-8);
        add(cr, std::string(pc.name) + ": polar-equation residuals", worst_ode, 1e-6,
            "normalized 4th-order differences, 25 sample times");
    }
}

// --------------------------------------------------------------- criterion 10

void criterion_orthonormality(CriterionResult& cr, bool corrupt) {
    cr.title = "the first eleven states form an orthonormal set";
    double worst = 0;
    std::string worst_at;
    for (const PresetCase& pc : all_presets()) {
        const Scenario sc = load(pc);
        const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, 0.2);
        const StateFamily fam(sc, b, solve_particular(sc, 0.2), 0.2);
        for (Variant v : {Variant::S, Variant::F, Variant::G}) {
            for (double t : {0.8, 1.9}) {
                const double rho = fam.polar().rho(t);
                const double half =
                    12.0 * rho * std::sqrt(sc.hbar() / fam.omega());
                const double xc = fam.x_p(t);
                const UniformGrid grid{xc - half, xc + half, 4096};
                std::vector<ComplexGridFunction> states;
                for (int n = 0; n <= 10; ++n)
                    states.push_back(fam.psi_grid(v, n, grid, t));
                if (corrupt)
                    for (auto& val : states[0].values) val *= 1.0001;
                for (int i = 0; i <= 10; ++i)
                    for (int j = i; j <= 10; ++j) {
                        const complex g = inner_product(states[i], states[j]);
                        const double dev = std::abs(g - (i == j ? 1.0 : 0.0));
                        if (dev > worst) {
                            worst = dev;
                            worst_at = std::string(pc.name) + " " + variant_name(v) +
                                       " t=" + fmt(t) + " <" + std::to_string(i) + "|" +
                                       std::to_string(j) + ">";
                        }
                    }
            }
        }
    }
    add(cr, "max entrywise Gram deviation from identity, n<=10", worst, 1e-6,
        "worst entry: " + worst_at);
}

using CriterionFn = void (*)(CriterionResult&, bool);

const CriterionFn kCriteria[kCriterionCount] = {
    criterion_kernel_uniqueness, criterion_state_residuals, criterion_spectral_sum,
    criterion_short_time,        criterion_coefficient_odes, criterion_oracle_agreement,
    criterion_unitary_map,       criterion_uncertainty,      criterion_classical_invariants,
    criterion_orthonormality,
};

}  // namespace

CriterionResult run_criterion(int index, bool corrupt) {
    if (index < 1 || index > kCriterionCount)
        throw ConfigError("criterion index must be in 1.." +
                          std::to_string(kCriterionCount));
    CriterionResult cr;
    cr.index = index;
    const auto start = std::chrono::steady_clock::now();
    kCriteria[index - 1](cr, corrupt);
    cr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                     .count();
    return cr;
}

namespace {
const std::vector<std::pair<std::string, std::vector<int>>>& suite_table() {
    static const std::vector<std::pair<std::string, std::vector<int>>> table = {
        {"classical", {9}},
        {"kernel", {1, 3, 4, 5}},
        {"states", {2, 7, 10}},
        {"observables", {8}},
        {"oracle", {6}},
        {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
    };
    return table;
}
}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, indices] : suite_table()) names.push_back(name);
    return names;
}

std::vector<CriterionResult> run_suite(const std::string& name, bool corrupt) {
    for (const auto& [suite, indices] : suite_table()) {
        if (suite != name) continue;
        std::vector<CriterionResult> results;
        for (int idx : indices) results.push_back(run_criterion(idx, corrupt));
        return results;
    }
    throw ConfigError("unknown verification suite '" + name + "'; valid: classical, "
                      "kernel, states, observables, oracle, all");
}

}  // namespace quadprop
