// Command-line front end: computes classical solutions, propagators, wave
// functions, and uncertainty products for a configured scenario, and runs the
// verification suites. All outputs are deterministic CSV (shortest
// round-trip number formatting, no timestamps).
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quadprop/common.hpp"
#include "quadprop/io.hpp"
#include "quadprop/kernel.hpp"
#include "quadprop/observables.hpp"
#include "quadprop/states.hpp"
#include "quadprop/verify.hpp"

using namespace quadprop;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
};

void emit(const CommonArgs& args, const std::string& filename, const CsvWriter& csv) {
    if (args.out_dir.empty()) {
        std::fputs(csv.str().c_str(), stdout);
        return;
    }
    std::filesystem::create_directories(args.out_dir);
    csv.write((std::filesystem::path(args.out_dir) / filename).string());
}

struct BasisConfig {
    ClassicalBasis basis;
    double t_pin = 0;
    double slope = 0;
};

// Shared classical inputs: homogeneous initial data (u_ic, v_ic as
// "value slope" pairs), the anchor time, the pin time t_a for the shifted
// solution, and the particular-solution launch slope.
BasisConfig load_basis(const KeyValueFile& kv, const Scenario& sc) {
    auto ic = [&](const char* key, InitialConditions fallback) {
        if (!kv.has(key)) return fallback;
        const std::vector<double> vals = kv.get_list(key);
        if (vals.size() != 2)
            throw ConfigError(std::string(key) + " needs exactly two numbers: value slope");
        return InitialConditions{vals[0], vals[1]};
    };
    BasisConfig bc;
    const double anchor = kv.get_double("basis_anchor", sc.t_min());
    bc.t_pin = kv.get_double("t_a", anchor);
    bc.slope = kv.get_double("particular_slope", 0.0);
    bc.basis = make_basis(sc, ic("u_ic", {1.0, 0.0}), ic("v_ic", {0.0, 1.0}), anchor);
    return bc;
}

Variant load_variant(const KeyValueFile& kv) {
    return parse_variant(kv.get_string("variant", "G"));
}

int cmd_solve(const CommonArgs& args) {
    const KeyValueFile kv = KeyValueFile::parse_file(args.config_path);
    const Scenario sc = Scenario::from_config(kv);
    const BasisConfig bc = load_basis(kv, sc);
    const ShiftedBasis shifted = shift_basis(bc.basis, sc, bc.t_pin);
    const ParticularSolution xp = solve_particular(sc, bc.t_pin, bc.slope);

    std::vector<double> times;
    if (sc.name() == "tabulated" && !kv.has("samples")) {
        // echo the tabulation grid
        const CsvTable table = read_csv(kv.get_string("table_path"));
        const std::size_t tcol = table.column("t");
        for (const std::vector<double>& row : table.rows) times.push_back(row[tcol]);
    } else {
        const int n = kv.get_int("samples", 501);
        if (n < 2) throw ConfigError("samples must be at least 2");
        for (int i = 0; i < n; ++i)
            times.push_back(sc.t_min() + (sc.t_max() - sc.t_min()) * i / (n - 1));
    }

    CsvWriter csv({"t", "u", "udot", "v", "vdot", "v_s", "x_p", "xp_dot", "omega_drift"});
    for (double t : times) {
        const double u = bc.basis.u.value(t), ud = bc.basis.u.deriv(t);
        const double v = bc.basis.v.value(t), vd = bc.basis.v.deriv(t);
        const double drift =
            std::abs(sc.evaluate(t).M * (vd * u - ud * v) - bc.basis.omega) /
            std::abs(bc.basis.omega);
        csv.add_row({t, u, ud, v, vd, shifted.v_s.value(t), xp.x.value(t),
                     xp.x.deriv(t), drift});
    }
    emit(args, "solve.csv", csv);
    return 0;
}

int cmd_kernel(const CommonArgs& args) {
    const KeyValueFile kv = KeyValueFile::parse_file(args.config_path);
    const Scenario sc = Scenario::from_config(kv);
    const BasisConfig bc = load_basis(kv, sc);
    const Variant variant = load_variant(kv);
    const double t_b = kv.get_double("t_b");

    const double x_min = kv.get_double("x_min", -2.0);
    const double x_max = kv.get_double("x_max", 2.0);
    const int n = kv.get_int("n_points", 21);
    if (!(x_max > x_min) || n < 2) throw ConfigError("kernel grid needs x_max > x_min and n_points >= 2");

    const KernelEvaluator ker(sc, shift_basis(bc.basis, sc, bc.t_pin),
                              solve_particular(sc, bc.t_pin, bc.slope), variant);
    CsvWriter csv({"x_a", "x_b", "re_K", "im_K"});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double xa = x_min + (x_max - x_min) * i / (n - 1);
            const double xb = x_min + (x_max - x_min) * j / (n - 1);
            const complex K = ker(xa, xb, t_b);
            csv.add_row({xa, xb, K.real(), K.imag()});
        }
    emit(args, "kernel.csv", csv);
    return 0;
}

int cmd_state(const CommonArgs& args) {
    const KeyValueFile kv = KeyValueFile::parse_file(args.config_path);
    const Scenario sc = Scenario::from_config(kv);
    const BasisConfig bc = load_basis(kv, sc);
    const Variant variant = load_variant(kv);
    const int n_level = kv.get_int("n", 0);

    const double x_min = kv.get_double("x_min", -8.0);
    const double x_max = kv.get_double("x_max", 8.0);
    const int n_points = kv.get_int("n_points", 513);
    const UniformGrid grid{x_min, x_max, static_cast<std::size_t>(n_points)};
    grid.validate();

    std::vector<double> times;
    if (kv.has("times"))
        times = kv.get_list("times");
    else
        times.push_back(0.5 * (sc.t_min() + sc.t_max()));

    const StateFamily fam(sc, bc.basis, solve_particular(sc, bc.t_pin, bc.slope),
                          bc.t_pin);
    CsvWriter csv({"t", "x", "re_psi", "im_psi", "abs2_psi"});
    for (double t : times) {
        const ComplexGridFunction psi = fam.psi_grid(variant, n_level, grid, t);
        for (std::size_t j = 0; j < grid.n; ++j) {
            const complex p = psi.values[j];
            csv.add_row({t, grid.x(j), p.real(), p.imag(), std::norm(p)});
        }
    }
    emit(args, "state.csv", csv);
    return 0;
}

int cmd_uncertainty(const CommonArgs& args) {
    const KeyValueFile kv = KeyValueFile::parse_file(args.config_path);
    const Scenario sc = Scenario::from_config(kv);
    const BasisConfig bc = load_basis(kv, sc);
    const Variant variant = load_variant(kv);
    const int m = kv.get_int("m", 0);

    const double x_min = kv.get_double("x_min", -12.0);
    const double x_max = kv.get_double("x_max", 12.0);
    const int n_points = kv.get_int("n_points", 4096);
    const UniformGrid grid{x_min, x_max, static_cast<std::size_t>(n_points)};
    grid.validate();

    std::vector<double> times;
    if (kv.has("times"))
        times = kv.get_list("times");
    else
        times.push_back(0.5 * (sc.t_min() + sc.t_max()));

    const StateFamily fam(sc, bc.basis, solve_particular(sc, bc.t_pin, bc.slope),
                          bc.t_pin);
    CsvWriter csv({"t", "m", "offset", "re_closed", "im_closed", "re_quad", "im_quad",
                   "rel_err"});
    for (double t : times) {
        for (int offset : {0, 1, 2}) {
            complex closed;
            if (offset == 0)
                closed = uncertainty_diagonal(fam, m, t).form_uv;
            else
                closed = uncertainty_offdiag(fam, m, offset, t).form_uv;
            const complex quad =
                uncertainty_product_quadrature(fam, variant, m, offset, grid, t);
            const double rel = std::abs(closed - quad) / std::max(std::abs(closed), 1e-300);
            csv.add_row({t, double(m), double(offset), closed.real(), closed.imag(),
                         quad.real(), quad.imag(), rel});
        }
    }
    emit(args, "uncertainty.csv", csv);
    return 0;
}

int cmd_verify(const CommonArgs& args, const std::string& suites_arg, bool corrupt) {
    std::vector<std::string> suites;
    std::stringstream ss(suites_arg);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) suites.push_back(item);
    if (suites.empty()) throw ConfigError("empty suite selection; valid suites: " + [] {
        std::string all;
        for (const std::string& s : suite_names()) all += (all.empty() ? "" : ", ") + s;
        return all;
    }());

    CsvWriter csv({"criterion", "check_index", "pass", "informational", "measured",
                   "tolerance"});
    int failures = 0;
    for (const std::string& suite : suites) {
        for (const CriterionResult& cr : run_suite(suite, corrupt)) {
            std::printf("[%s] criterion %d %s  %s  (%.1fs)\n", suite.c_str(), cr.index,
                        cr.passed() ? "PASS" : "FAIL", cr.title.c_str(), cr.seconds);
            for (std::size_t k = 0; k < cr.checks.size(); ++k) {
                const CheckResult& c = cr.checks[k];
                std::printf("    [%s] %s  measured %.3e",
                            c.informational ? "info" : (c.pass ? " ok " : "FAIL"),
                            c.name.c_str(), c.measured);
                if (c.tolerance > 0) std::printf(" tol %.0e", c.tolerance);
                std::printf("\n");
                csv.add_row({double(cr.index), double(k), c.pass ? 1.0 : 0.0,
                             c.informational ? 1.0 : 0.0, c.measured, c.tolerance});
            }
            if (!cr.passed()) ++failures;
        }
    }
    if (!args.out_dir.empty()) {
        std::filesystem::create_directories(args.out_dir);
        csv.write((std::filesystem::path(args.out_dir) / "verify_report.csv").string());
    }
    if (failures > 0) {
        std::printf("verification FAILED: %d criterion(s) out of tolerance\n", failures);
        return 4;
    }
    std::printf("verification passed\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact propagators and wave functions of time-dependent quadratic systems"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string suites = "all";
    bool corrupt = false;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", args.config_path, "key=value config file");
        if (config_required) opt->required();
        sub->add_option("--out", args.out_dir, "output directory (default: stdout)");
    };
    add_common(app.add_subcommand("solve", "classical basis, shifted and particular solutions"), true);
    add_common(app.add_subcommand("kernel", "propagator over an endpoint grid"), true);
    add_common(app.add_subcommand("state", "wave function over an (x, t) grid"), true);
    add_common(app.add_subcommand("uncertainty", "uncertainty products, closed forms vs quadrature"), true);
    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify, false);
    verify->add_option("--suite", suites, "comma-separated suite list (default: all)");
    verify->add_flag("--corrupt", corrupt, "inject defects; a healthy verifier must then fail");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("solve")) return cmd_solve(args);
        if (app.got_subcommand("kernel")) return cmd_kernel(args);
        if (app.got_subcommand("state")) return cmd_state(args);
        if (app.got_subcommand("uncertainty")) return cmd_uncertainty(args);
        return cmd_verify(args, suites, corrupt);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const CausticError& e) {
        std::fprintf(stderr, "caustic: %s (conjugate point at t = %.12g)\n", e.what(),
                     e.conjugate_time);
        return 3;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 3;
    } catch (const NumericsError& e) {
        std::fprintf(stderr, "numerics error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
