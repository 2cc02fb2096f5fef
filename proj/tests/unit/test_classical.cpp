#include <cmath>

#include "doctest.h"
#include "quadprop/classical.hpp"
#include "test_support.hpp"

using namespace quadprop;

namespace {
ClassicalBasis sho_basis(const Scenario& sc) {
    return make_basis(sc, {1.0, 0.0}, {0.0, 1.0}, 0.0);
}
}  // namespace

TEST_CASE("basis invariant is constant and equal to its anchor value") {
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const ClassicalBasis b = sho_basis(sc);
    CHECK_NEAR(b.omega, 1.0, 1e-12);
    CHECK(wronskian_drift(sc, b.u, b.v, b.omega) < 1e-9);

    const Scenario ck = Scenario::preset("caldirola-kanai", {{"gamma", 0.4}}, 1.0, 0.0, 8.0);
    const ClassicalBasis bc = make_basis(ck, {1.0, -0.3}, {0.4, 1.0}, 0.5);
    // omega = M (vdot u - udot v) at the anchor
    const double m_anchor = ck.evaluate(0.5).M;
    CHECK_NEAR(bc.omega, m_anchor * (1.0 * 1.0 - (-0.3) * 0.4), 1e-10);
    CHECK(wronskian_drift(ck, bc.u, bc.v, bc.omega) < 1e-9);
}

TEST_CASE("nearly dependent initial data is rejected") {
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 2.0);
    CHECK_THROWS_AS(make_basis(sc, {1.0, 0.0}, {2.0, 0.0}, 0.0), ValidationError);
}

TEST_CASE("particular solutions satisfy their anchor conditions and closed forms") {
    const Scenario dr = Scenario::preset("driven-sho", {{"F0", 1.0}, {"nu", 2.0}}, 1.0, 0.0, 9.0);
    const ParticularSolution xp = solve_particular(dr, 0.0);
    CHECK_NEAR(xp.x.value(0.0), 0.0, 1e-13);
    CHECK_NEAR(xp.x.deriv(0.0), 0.0, 1e-12);
    for (double t : {0.7, 2.5, 8.0})
        CHECK_NEAR(xp.x.value(t), (2.0 * std::sin(t) - std::sin(2.0 * t)) / 3.0, 1e-10);

    // constant unit drive: x_p = 1 - cos t
    Scenario::Functions fns;
    fns.M = [](double) { return 1.0; };
    fns.w2 = [](double) { return 1.0; };
    fns.F = [](double) { return 1.0; };
    const Scenario cst = Scenario::custom("const-drive", std::move(fns), 1.0, 0.0, 6.0);
    const ParticularSolution xc = solve_particular(cst, 0.0);
    CHECK_NEAR(xc.x.value(2.0), 1.0 - std::cos(2.0), 1e-10);

    const ParticularSolution xs = solve_particular(dr, 1.0, 0.5);
    CHECK_NEAR(xs.x.value(1.0), 0.0, 1e-13);
    CHECK_NEAR(xs.x.deriv(1.0), 0.5, 1e-12);
}

TEST_CASE("shifted basis pins v_s and keeps its own invariant") {
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const ClassicalBasis b = sho_basis(sc);
    const ShiftedBasis sb = shift_basis(b, sc, 0.5);
    CHECK_NEAR(sb.v_s.value(0.5), 0.0, 1e-13);
    CHECK_NEAR(sb.v_s.deriv(0.5), 1.0, 1e-12);
    for (double t : {1.0, 3.0, 7.7}) CHECK_NEAR(sb.v_s.value(t), std::sin(t - 0.5), 1e-10);
    CHECK_NEAR(sb.omega_s, std::cos(0.5), 1e-10);

    // shifting an already pinned basis is idempotent
    const ClassicalBasis b2{sb.u, sb.v_s, 0.5, sb.omega_s};
    const ShiftedBasis sb2 = shift_basis(b2, sc, 0.5);
    for (double t : {0.9, 4.2}) CHECK_NEAR(sb2.v_s.value(t), sb.v_s.value(t), 1e-12);
}

TEST_CASE("two-point path interpolates its endpoints and solves the motion") {
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const ClassicalBasis b = sho_basis(sc);
    const ShiftedBasis sb = shift_basis(b, sc, 0.5);
    const ParticularSolution none = solve_particular(sc, 0.5);  // identically zero

    const Endpoints ep{0.5, 0.3, 1.7, -0.2};
    const ClassicalPath path(sb, none, ep);
    CHECK_NEAR(path.value(0.5), 0.3, 1e-12);
    CHECK_NEAR(path.value(1.7), -0.2, 1e-12);
    // closed form through the sine/cosine basis
    const double u_a = std::cos(0.5), u_b = std::cos(1.7), vs_b = std::sin(1.2);
    for (double t : {0.8, 1.2, 1.6}) {
        const double exact = 0.3 * std::cos(t) / u_a +
                             (-0.2 - 0.3 * u_b / u_a) * std::sin(t - 0.5) / vs_b;
        CHECK_NEAR(path.value(t), exact, 1e-9);
    }

    CHECK_THROWS_AS(ClassicalPath(sb, none, Endpoints{0.6, 0.0, 1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(ClassicalPath(sb, none, Endpoints{0.5, 0.0, 0.5 + M_PI, 1.0}),
                    CausticError);
}

TEST_CASE("driven path passes through shifted endpoints") {
    const Scenario dr = Scenario::preset("driven-sho", {{"F0", 0.8}, {"nu", 2.0}}, 1.0, 0.0, 9.0);
    const ClassicalBasis b = make_basis(dr, {1.0, 0.0}, {0.0, 1.0}, 0.0);
    const ShiftedBasis sb = shift_basis(b, dr, 0.3);
    const ParticularSolution xp = solve_particular(dr, 0.3);
    const Endpoints ep{0.3, -0.4, 2.1, 0.9};
    const ClassicalPath path(sb, xp, ep);
    CHECK_NEAR(path.value(0.3), -0.4, 1e-11);
    CHECK_NEAR(path.value(2.1), 0.9, 1e-11);
    // second difference check of the equation of motion  x'' + x = F
    const double h = 1e-4, tm = 1.3;
    const double xpp =
        (path.value(tm + h) - 2.0 * path.value(tm) + path.value(tm - h)) / (h * h);
    CHECK_NEAR(xpp + path.value(tm), 0.8 * std::sin(2.0 * tm), 1e-5);
}

TEST_CASE("polar form of the harmonic basis is the unit circle") {
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const ClassicalBasis b = sho_basis(sc);
    const RhoTheta pol = rho_theta(sc, b);
    for (double t : {0.0, 1.0, 3.5, 6.9, 9.9}) {
        CHECK_NEAR(pol.rho(t), 1.0, 1e-10);
        CHECK_NEAR(pol.theta(t), t, 1e-9);
        CHECK_NEAR(pol.theta_dot(t), 1.0, 1e-9);
        CHECK_NEAR(pol.rho_dot(t), 0.0, 1e-9);
    }
    CHECK(pol.count_v_zeros(0.1, 9.9) == 3);  // pi, 2pi, 3pi
    CHECK(pol.count_v_zeros(0.1, 3.0) == 0);
    CHECK(pol.count_v_zeros(3.0, 6.4) == 2);  // pi and 2pi
}

TEST_CASE("polar angle is tracked continuously for a reversed basis") {
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, -1.0}, 0.0);
    CHECK_NEAR(b.omega, -1.0, 1e-12);
    const RhoTheta pol = rho_theta(sc, b);
    CHECK_NEAR(pol.theta(8.0), -8.0, 1e-8);
    CHECK(pol.count_v_zeros(0.1, 9.9) == 3);
}

TEST_CASE("pulsating basis has the expected envelope") {
    // u = cos t, v = 2 sin t  ->  rho² = cos² + 4 sin², omega = 2
    const Scenario sc = Scenario::preset("sho", {}, 1.0, 0.0, 10.0);
    const ClassicalBasis b = make_basis(sc, {1.0, 0.0}, {0.0, 2.0}, 0.0);
    CHECK_NEAR(b.omega, 2.0, 1e-12);
    const RhoTheta pol = rho_theta(sc, b);
    for (double t : {0.4, 2.0, 5.1}) {
        const double c = std::cos(t), s = std::sin(t);
        const double rho = std::sqrt(c * c + 4.0 * s * s);
        CHECK_NEAR(pol.rho(t), rho, 1e-10);
        CHECK_NEAR(pol.theta_dot(t), 2.0 / (rho * rho), 1e-9);
        // angle identity (u, v) = rho (cos theta, sin theta)
        CHECK_NEAR(std::cos(pol.theta(t)), c / rho, 1e-9);
        CHECK_NEAR(std::sin(pol.theta(t)), 2.0 * s / rho, 1e-9);
    }
    // the winding is tracked, not reduced mod 2 pi
    for (int k : {1, 2, 3}) CHECK_NEAR(pol.theta(k * M_PI), k * M_PI, 1e-9);
}
