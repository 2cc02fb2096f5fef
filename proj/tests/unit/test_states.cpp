#include <cmath>

#include "doctest.h"
#include "quadprop/states.hpp"
#include "test_support.hpp"

using namespace quadprop;

TEST_CASE("hermite polynomials against coefficient tables") {
    CHECK(hermite(0, 0.3) == 1.0);
    CHECK(hermite(1, 0.3) == 0.6);
    CHECK_NEAR(hermite(3, 0.5), -5.0, 1e-13);  // 8y³ - 12y at y = 1/2
    const double y = 3.7;
    const double y2 = y * y;
    // H_10 = 1024y^10 - 23040y^8 + 161280y^6 - 403200y^4 + 302400y^2 - 30240
    const double h10 =
        ((((1024.0 * y2 - 23040.0) * y2 + 161280.0) * y2 - 403200.0) * y2 + 302400.0) * y2 -
        30240.0;
    CHECK_REL(hermite(10, y), h10, 1e-12);
    CHECK_REL(hermite_scaled(10, y).to_double(), h10, 1e-12);
    CHECK_THROWS_AS(hermite(-1, 0.0), ValidationError);
    CHECK_THROWS_AS(hermite(513, 0.0), ValidationError);
}

TEST_CASE("scaled recurrence survives orders that overflow the plain one") {
    const ScaledValue v = hermite_scaled(400, 1.5);
    CHECK(std::isfinite(v.mantissa));
    CHECK(v.mantissa != 0.0);
    CHECK(v.exponent2 > 900);  // magnitude far beyond double range
}

TEST_CASE("normalized gaussian-weighted recurrence matches the direct formula") {
    const double y = 0.5;
    const double direct = hermite(3, y) * std::exp(-0.5 * y * y) / std::sqrt(48.0);
    CHECK_REL(hermite_normalized_gaussian(3, y), direct, 1e-13);

    // large order via log-domain cross-check
    const int n = 60;
    const double yy = 3.0;
    const ScaledValue h = hermite_scaled(n, yy);
    const double log_r = std::log(std::abs(h.mantissa)) + double(h.exponent2) * std::log(2.0) -
                         0.5 * yy * yy -
                         0.5 * (n * std::log(2.0) + std::lgamma(double(n) + 1.0));
    const double got = hermite_normalized_gaussian(n, yy);
    CHECK_REL(std::log(std::abs(got)), log_r, 1e-10);
    CHECK(std::abs(got) < 1.0);  // bounded family
}

namespace {
StateFamily sho_family(const Scenario& sc, double slope_v = 1.0) {
    const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, slope_v}, 0.0);
    return StateFamily(sc, b, solve_particular(sc, 0.0), 0.0);
}
}  // namespace

TEST_CASE("harmonic ground state in closed form") {
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const StateFamily fam = sho_family(sc);
    for (double t : {0.0, 0.8, 4.4})
        for (double x : {0.0, 0.5, -1.3}) {
            const complex want = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x) *
                                 std::exp(complex(0.0, -0.5 * t));
            CHECK(rel_err(fam.psi(Variant::S, 0, x, t), want) < 1e-11);
        }
    // first excited state picks up sqrt(2) x and triple phase
    const double x = 0.7, t = 1.1;
    const complex want1 = std::pow(M_PI, -0.25) * std::sqrt(2.0) * x *
                          std::exp(-0.5 * x * x) * std::exp(complex(0.0, -1.5 * t));
    CHECK(rel_err(fam.psi(Variant::S, 1, x, t), want1) < 1e-11);
}

TEST_CASE("states are orthonormal on a wide grid") {
    const Scenario sc = Scenario::preset("paul-trap", {}, 1.0, 0.0, 6.0);
    const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, 0.0);
    const StateFamily fam(sc, b, std::nullopt, 0.0);
    const UniformGrid grid{-10.0, 10.0, 1024};
    const double t = 1.7;
    std::vector<ComplexGridFunction> psi;
    for (int n = 0; n < 5; ++n) psi.push_back(fam.psi_grid(Variant::S, n, grid, t));
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j) {
            const complex g = inner_product(psi[i], psi[j]);
            CHECK_NEAR(std::abs(g), i == j ? 1.0 : 0.0, 1e-8);
        }
}

TEST_CASE("pulsating-width family: envelope and Gaussian parameters") {
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const StateFamily fam = sho_family(sc, 2.0);  // u = cos, v = 2 sin, omega = 2
    CHECK_NEAR(fam.omega(), 2.0, 1e-12);
    const double t = M_PI / 4.0;
    const GaussianParams g = fam.gaussian_params(t);
    // rho² = cos² + 4 sin² = 5/2 at t = pi/4, so gamma1 = 2/(5/2) = 0.8
    CHECK_NEAR(g.gamma1, 0.8, 1e-9);
    CHECK_NEAR(g.gamma1_prime, g.gamma1, 0.0);
    // a = 0 here: gamma2' = gamma2 = -M rho_dot / rho
    CHECK_NEAR(g.gamma2, g.gamma2_prime, 1e-12);

    // width of |psi_0|² is rho²/(2 omega)
    const UniformGrid grid{-10.0, 10.0, 2048};
    const ComplexGridFunction p0 = fam.psi_grid(Variant::S, 0, grid, t);
    complex x2 = 0;
    for (std::size_t j = 0; j < grid.n; ++j)
        x2 += std::conj(p0.values[j]) * grid.x(j) * grid.x(j) * p0.values[j];
    CHECK_NEAR((x2 * grid.dx()).real(), 2.5 / 4.0, 1e-8);
}

TEST_CASE("flipped-orientation basis is normalized the same way") {
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const StateFamily fam = sho_family(sc, -1.0);
    CHECK_NEAR(fam.omega(), 1.0, 1e-12);  // orientation is repaired internally
    const UniformGrid grid{-8.0, 8.0, 1024};
    const ComplexGridFunction p = fam.psi_grid(Variant::S, 2, grid, 1.3);
    CHECK_NEAR(l2_norm(p), 1.0, 1e-9);
}

TEST_CASE("the three variants coincide when the extra couplings vanish") {
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const StateFamily fam = sho_family(sc);
    const double x = 0.9, t = 2.2;
    const complex s = fam.psi(Variant::S, 3, x, t);
    CHECK(rel_err(fam.psi(Variant::F, 3, x, t), s) < 1e-12);
    CHECK(rel_err(fam.psi(Variant::G, 3, x, t), s) < 1e-12);
}

TEST_CASE("drive phase: energy-integral route equals the literal route") {
    const Scenario dr = Scenario::preset("driven-sho", {{"F0", 1.0}, {"nu", 2.0}}, 1.0, 0.0, 9.0);
    const ClassicalBasis b = make_basis(dr, {1.0, 0.0}, {0.0, 1.0}, 0.0);

    // particular solution anchored at the reference time: chi(t_0) = 0 branch
    {
        const StateFamily fam(dr, b, solve_particular(dr, 0.2), 0.2);
        for (double t : {0.5, 1.9, 2.9})  // window stays clear of v's zero at pi
            CHECK_NEAR(fam.chi(t), fam.chi_verbatim(t), 1e-9);
        CHECK_THROWS_AS(fam.chi_verbatim(3.5), DomainError);  // crosses v = 0 at pi
    }
    // particular solution anchored elsewhere: boundary term at t_0 kicks in
    {
        const StateFamily fam(dr, b, solve_particular(dr, 0.0, 0.3), 0.2);
        for (double t : {0.5, 2.4}) CHECK_NEAR(fam.chi(t), fam.chi_verbatim(t), 1e-9);
    }
}

TEST_CASE("driven ground state in Gaussian normal form") {
    const Scenario fq = Scenario::preset("full-quadratic", {}, 1.0, 0.0, 6.0);
    const ClassicalBasis b = make_basis(fq, {1.0, 0.0}, {0.0, 1.0}, 0.0);
    const StateFamily fam(fq, b, solve_particular(fq, 0.0), 0.0);
    const double t = 1.1;
    const GaussianParams g = fam.gaussian_params(t);
    const double xp = fam.x_p(t), pp = fam.classical_momentum(t);
    const double delta = fam.extract_delta(Variant::G, t);
    const double hbar = 1.0;
    for (double x : {-0.8, 0.1, 0.6, 1.4}) {
        const complex gamma_p(g.gamma1_prime, g.gamma2_prime);
        const complex want = std::pow(g.gamma1 / M_PI, 0.25) *
                             std::exp(complex(0.0, delta)) *
                             std::exp(-gamma_p * (x - xp) * (x - xp) / 2.0 +
                                      complex(0.0, x * pp / hbar));
        CHECK(rel_err(fam.psi(Variant::G, 0, x, t), want) < 1e-9);
    }

    // the normal-form phase stays continuous in time
    double prev = fam.extract_delta(Variant::G, 1.0);
    for (double t2 = 1.0 + 1e-3; t2 < 1.05; t2 += 1e-3) {
        const double cur = fam.extract_delta(Variant::G, t2);
        CHECK(std::abs(std::exp(complex(0.0, cur)) - std::exp(complex(0.0, prev))) < 0.05);
        prev = cur;
    }
}

TEST_CASE("general states are the gauge image of the driven ones") {
    const Scenario fq = Scenario::preset("full-quadratic", {}, 1.0, 0.0, 6.0);
    const ClassicalBasis b = make_basis(fq, {1.0, 0.0}, {0.0, 1.0}, 0.0);
    const StateFamily fam(fq, b, solve_particular(fq, 0.0), 0.0);
    const UniformGrid grid{-8.0, 8.0, 512};
    for (double t : {0.7, 2.5}) {
        const ComplexGridFunction f = fam.psi_grid(Variant::F, 2, grid, t);
        const ComplexGridFunction gver = fam.psi_grid(Variant::G, 2, grid, t);
        const ComplexGridFunction mapped = apply_unitary_U(fq, f, t, fam.t_0());
        CHECK(l2_distance(mapped, gver) < 1e-10);
    }
}

TEST_CASE("states depend on the basis that generates them") {
    const Scenario sc = Scenario::preset("paul-trap", {}, 1.0, 0.0, 6.0);
    const ClassicalBasis b1 = make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, 0.0);
    const ClassicalBasis b2 = make_basis(sc, {1.0, -0.3}, {0.4, 1.0}, 0.0);
    const StateFamily f1(sc, b1, std::nullopt, 0.0);
    const StateFamily f2(sc, b2, std::nullopt, 0.0);
    const UniformGrid grid{-8.0, 8.0, 512};
    CHECK(l2_distance(f1.psi_grid(Variant::S, 0, grid, 1.0),
                      f2.psi_grid(Variant::S, 0, grid, 1.0)) > 0.05);
}
