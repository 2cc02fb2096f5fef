#include <cmath>

#include "doctest.h"
#include "quadprop/kernel.hpp"
#include "quadprop/observables.hpp"
#include "quadprop/oracle.hpp"
#include "quadprop/states.hpp"
#include "test_support.hpp"

using namespace quadprop;

namespace {
complex sho_ground(double x, double t) {
    return std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x) *
           std::exp(complex(0.0, -0.5 * t));
}
}  // namespace

TEST_CASE("applying the Hamiltonian to an eigenstate rescales it") {
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, 0.0);
    const StateFamily fam(sc, b, std::nullopt, 0.0);
    const UniformGrid grid{-9.0, 9.0, 1024};
    for (int n : {0, 3}) {
        const ComplexGridFunction psi = fam.psi_grid(Variant::S, n, grid, 0.4);
        const ComplexGridFunction hpsi = hamiltonian_apply(sc, psi, 0.4, Variant::S);
        ComplexGridFunction want = psi;
        for (auto& v : want.values) v *= (n + 0.5);
        // compare away from the edges where the stencil is one-sided
        double num = 0, den = 0;
        for (std::size_t j = 8; j + 8 < grid.n; ++j) {
            num += std::norm(hpsi.values[j] - want.values[j]);
            den += std::norm(want.values[j]);
        }
        CHECK(std::sqrt(num / den) < 1e-7);
    }
}

TEST_CASE("Schrödinger residual separates exact states from corrupted ones") {
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const UniformGrid grid{-8.0, 8.0, 1024};

    const ResidualReport ok = schrodinger_residual(
        [](double x, double t) { return sho_ground(x, t); }, sc, grid, 1.0, 1e-4,
        Variant::S);
    CHECK(ok.l2_residual < 1e-7);
    CHECK(ok.edge_mass < 1e-12);
    CHECK(ok.n_points == grid.n);

    // a global phase does not change the residual
    const ResidualReport phased = schrodinger_residual(
        [](double x, double t) { return sho_ground(x, t) * std::exp(complex(0.0, 0.9)); },
        sc, grid, 1.0, 1e-4, Variant::S);
    CHECK(phased.l2_residual < 1e-7);

    // a 10% width defect is loudly visible
    const ResidualReport bad = schrodinger_residual(
        [](double x, double t) {
            return std::pow(M_PI, -0.25) * std::exp(-0.5 * 1.21 * x * x) *
                   std::exp(complex(0.0, -0.5 * t));
        },
        sc, grid, 1.0, 1e-4, Variant::S);
    CHECK(bad.l2_residual > 1e-2);

    CHECK_THROWS_AS(schrodinger_residual(
                        [](double x, double t) { return sho_ground(x, t); }, sc, grid, 1.0,
                        -1e-4, Variant::S),
                    ValidationError);
}

TEST_CASE("spreading free Gaussian satisfies the free equation") {
    const Scenario fr = Scenario::preset("free", {}, 1.0, 0.0, 5.0);
    const UniformGrid grid{-10.0, 10.0, 1024};
    const ResidualReport r = schrodinger_residual(
        [](double x, double t) {
            const complex den(1.0, t);
            return std::pow(M_PI, -0.25) / std::sqrt(den) * std::exp(-x * x / (2.0 * den));
        },
        fr, grid, 1.0, 1e-4, Variant::S);
    CHECK(r.l2_residual < 1e-6);
}

TEST_CASE("constructed families satisfy their own evolution equations") {
    const Scenario fq = Scenario::preset("full-quadratic", {}, 1.0, 0.0, 6.0);
    const ClassicalBasis bg = make_basis(fq, {1.0, 0.0}, {0.0, 1.0}, 0.3);
    const StateFamily fg(fq, bg, solve_particular(fq, 0.3), 0.3);
    const UniformGrid grid{-10.0, 10.0, 1024};
    const ResidualReport rg = schrodinger_residual(
        [&](double x, double t) { return fg.psi(Variant::G, 2, x, t); }, fq, grid, 1.2,
        1e-4, Variant::G);
    CHECK(rg.l2_residual < 1e-5);

    const Scenario dr =
        Scenario::preset("driven-sho", {{"F0", 1.0}, {"nu", 2.0}}, 1.0, 0.0, 9.0);
    const ClassicalBasis bd = make_basis(dr, {1.0, 0.0}, {0.0, 1.0}, 0.0);
    const StateFamily fd(dr, bd, solve_particular(dr, 0.0), 0.0);
    const ResidualReport rf = schrodinger_residual(
        [&](double x, double t) { return fd.psi(Variant::F, 0, x, t); }, dr, grid, 1.5,
        1e-4, Variant::F);
    CHECK(rf.l2_residual < 1e-5);
}

namespace {
ComplexGridFunction coherent(const UniformGrid& grid, double x0, double t) {
    return sample_grid(grid, t, [&](double x) {
        const double xc = x0 * std::cos(t);
        const double ph =
            -(0.5 * t + x * x0 * std::sin(t) - 0.25 * x0 * x0 * std::sin(2.0 * t));
        return std::pow(M_PI, -0.25) * std::exp(-0.5 * (x - xc) * (x - xc)) *
               std::exp(complex(0.0, ph));
    });
}
}  // namespace

TEST_CASE("implicit-midpoint evolution tracks closed solutions and converges at "
          "second order") {
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const UniformGrid grid{-8.0, 8.0, 1024};
    const ComplexGridFunction psi0 = coherent(grid, 1.0, 0.0);

    const ComplexGridFunction c4096 = crank_nicolson_evolve(sc, psi0, 0.0, 1.0, 4096,
                                                            Variant::S);
    CHECK(l2_distance(c4096, coherent(grid, 1.0, 1.0)) < 1e-3);

    // halving dt four-fold cuts the error by ~16: compare Richardson pairs
    const ComplexGridFunction c1024 = crank_nicolson_evolve(sc, psi0, 0.0, 1.0, 1024,
                                                            Variant::S);
    const ComplexGridFunction c2048 = crank_nicolson_evolve(sc, psi0, 0.0, 1.0, 2048,
                                                            Variant::S);
    const double d1 = l2_distance(c1024, c2048);
    const ComplexGridFunction c8192 = crank_nicolson_evolve(sc, psi0, 0.0, 1.0, 8192,
                                                            Variant::S);
    const double d2 = l2_distance(c2048, c4096);
    const double d3 = l2_distance(c4096, c8192);
    CHECK(d1 / d2 > 3.6);
    CHECK(d1 / d2 < 4.4);
    CHECK(d2 / d3 > 3.6);
    CHECK(d2 / d3 < 4.4);

    CHECK_THROWS_AS(crank_nicolson_evolve(sc, psi0, 0.0, 1.0, 0, Variant::S),
                    ValidationError);
}

TEST_CASE("independent evolvers agree: implicit midpoint vs kernel quadrature") {
    const Scenario dr =
        Scenario::preset("driven-sho", {{"F0", 1.0}, {"nu", 2.0}}, 1.0, 0.0, 9.0);
    const UniformGrid grid{-8.0, 8.0, 1024};
    const ClassicalBasis b = make_basis(dr, {1.0, 0.0}, {0.0, 1.0}, 0.0);
    const StateFamily fam(dr, b, solve_particular(dr, 0.0), 0.0);
    const ComplexGridFunction psi0 = fam.psi_grid(Variant::F, 0, grid, 0.0);

    const ComplexGridFunction cn =
        crank_nicolson_evolve(dr, psi0, 0.0, 1.3, 6000, Variant::F);

    const KernelEvaluator ker(dr, shift_basis(b, dr, 0.0), solve_particular(dr, 0.0),
                              Variant::F);
    const PropagateResult kp = propagate(ker, psi0, 1.3);
    CHECK(l2_distance(cn, kp.psi) < 1e-3);

    // and both agree with the state the family itself constructs at 1.3
    const ComplexGridFunction exact = fam.psi_grid(Variant::F, 0, grid, 1.3);
    CHECK(l2_distance(kp.psi, exact) < 1e-6);
    CHECK(l2_distance(cn, exact) < 1e-3);
}
