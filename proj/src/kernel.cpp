#include "quadprop/kernel.hpp"

#include <cmath>

#include "quadprop/quadrature.hpp"
#include "quadprop/states.hpp"

namespace quadprop {

namespace {

struct EffectiveCoeffs {
    double M, a, b, f, c, d;
};

// The Hamiltonian the variant's kernel actually solves: S and F keep only the
// kinetic/potential pair (F contributes the linear source d = -F), G uses the
// full derived coefficients.
EffectiveCoeffs effective(const Scenario& sc, Variant variant, double t) {
    const Coeffs cc = sc.evaluate(t);
    EffectiveCoeffs e{cc.M, 0.0, 0.0, 0.0, cc.w2, 0.0};
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

void check_window(const Scenario& sc, double t_a, double t_b) {
    sc.validate_time(t_a);
    sc.validate_time(t_b);
    if (!(t_b > t_a)) throw DomainError("the propagation window must have t_b > t_a");
}

double u_at_pin(const ShiftedBasis& shifted) {
    const double u_a = shifted.u.value(shifted.t_pin);
    const double scale = shifted.u.max_abs_on(shifted.u.t_min(), shifted.u.t_max());
    if (std::abs(u_a) <= 1e-12 * (scale + 1e-300))
        throw DomainError("u vanishes at the window start; re-pin the basis elsewhere");
    return u_a;
}

void check_particular_anchor(const ParticularSolution& xp, double t_a) {
    const double scale = xp.x.max_abs_on(xp.x.t_min(), xp.x.t_max());
    if (std::abs(xp.x.value(t_a)) > 1e-9 * (scale + 1.0))
        throw DomainError(
            "the driven closed forms require the particular solution to vanish at the "
            "window start");
}

// Polar scan of (u/u_a, v_s/vdot_s(t_a)): theta starts at 0 and increases, so
// zeros of v_s in (t_a, t] are the multiples of pi that theta has passed.
RhoTheta make_scan(const Scenario& sc, const ShiftedBasis& shifted) {
    const double u_a = u_at_pin(shifted);
    const double vsd_a = shifted.v_s.deriv(shifted.t_pin);
    if (vsd_a == 0.0) throw ValidationError("shifted basis has zero slope at its pin");
    DenseSolution un = DenseSolution::combine(1.0 / u_a, shifted.u, 0.0, shifted.u);
    DenseSolution vn = DenseSolution::combine(1.0 / vsd_a, shifted.v_s, 0.0, shifted.v_s);
    const double m_a = sc.evaluate(shifted.t_pin).M;
    return RhoTheta(sc, std::move(un), std::move(vn), m_a, shifted.t_pin);
}

void require_clean_window(const RhoTheta& scan, double t_a, double t_b) {
    const int zeros = scan.count_v_zeros(t_a, t_b);
    if (zeros > 0)
        throw CausticError(
            "the literal propagator expression is not valid across a conjugate point; "
            "use the coefficient evaluator",
            t_b);
}

double delta_Y(const ParticularSolution& xp, const Scenario& sc, double t_a, double t_b,
               const QuadratureOptions& quad) {
    return integrate(
        [&](double z) { return 0.5 * xp.x.value(z) * sc.evaluate(z).F; }, t_a, t_b, quad);
}

double integral_f(const Scenario& sc, double t_a, double t_b,
                  const QuadratureOptions& quad) {
    return integrate([&](double z) { return sc.evaluate(z).f; }, t_a, t_b, quad);
}

}  // namespace

complex KernelCoefficients::evaluate(double x_a, double x_b) const {
    const complex expo = A * (x_a * x_a) + B * (x_b * x_b) + h * (x_a * x_b) +
                         alpha * x_a + beta * x_b + s;
    return std::exp(complex(0.0, 1.0) / hbar * expo);
}

KernelEvaluator::KernelEvaluator(const Scenario& sc, const ShiftedBasis& shifted,
                                 std::optional<ParticularSolution> particular,
                                 Variant variant, const QuadratureOptions& quad)
    : sc_(sc),
      shifted_(shifted),
      particular_(std::move(particular)),
      variant_(variant),
      quad_(quad) {
    if (particular_) check_particular_anchor(*particular_, shifted_.t_pin);
    scan_ = std::make_shared<RhoTheta>(make_scan(sc_, shifted_));
}

int KernelEvaluator::conjugate_points(double t_b) const {
    check_window(sc_, shifted_.t_pin, t_b);
    return static_cast<int>(std::floor(scan_->theta(t_b) / M_PI));
}

const KernelCoefficients& KernelEvaluator::coefficients(double t_b) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(t_b);
        if (it != cache_.end()) return it->second;
    }
    KernelCoefficients kc = compute(t_b);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return cache_.emplace(t_b, std::move(kc)).first->second;
}

complex KernelEvaluator::operator()(double x_a, double x_b, double t_b) const {
    return coefficients(t_b).evaluate(x_a, x_b);
}

KernelCoefficients KernelEvaluator::compute(double t_b) const {
    const double t_a = shifted_.t_pin;
    check_window(sc_, t_a, t_b);

    const double vs_b = shifted_.v_s.value(t_b);
    const double vs_scale = shifted_.v_s.max_abs_on(t_a, t_b);
    if (std::abs(vs_b) <= 1e-10 * (vs_scale + 1e-300))
        throw CausticError("t_b is a conjugate point of t_a: no unique trajectory", t_b);

    const Coeffs ca = sc_.evaluate(t_a);
    const Coeffs cb = sc_.evaluate(t_b);
    const double u_a = u_at_pin(shifted_);
    const double u_b = shifted_.u.value(t_b);
    const double ud_a = shifted_.u.deriv(t_a);
    const double vsd_a = shifted_.v_s.deriv(t_a);
    const double vsd_b = shifted_.v_s.deriv(t_b);

    KernelCoefficients kc;
    kc.variant = variant_;
    kc.t_a = t_a;
    kc.t_b = t_b;
    kc.hbar = sc_.hbar();

    double A = 0.5 * ca.M * (-ud_a / u_a + u_b * vsd_a / (u_a * vs_b));
    double B = 0.5 * cb.M * vsd_b / vs_b;
    const double h = -ca.M * vsd_a / vs_b;
    double alpha = 0.0, beta = 0.0, s_dyn = 0.0;

    if (variant_ != Variant::S && particular_) {
        const double xp_b = particular_->x.value(t_b);
        const double xpd_a = particular_->x.deriv(t_a);
        const double xpd_b = particular_->x.deriv(t_b);
        alpha = ca.M * (xp_b * vsd_a / vs_b - xpd_a);
        beta = -cb.M * xp_b * vsd_b / vs_b + cb.M * xpd_b;
        // The squared-projection time integral in boundary form: finite on
        // both sides of any interior conjugate point, unlike the literal
        // integral. The t_a term vanishes because x_p is anchored there.
        const double w_b = xp_b * vsd_b - xpd_b * vs_b;
        s_dyn = 0.5 * cb.M * xp_b * w_b / vs_b + delta_Y(*particular_, sc_, t_a, t_b, quad_);
    }
    if (variant_ == Variant::G) {
        A -= ca.M * ca.a;
        B += cb.M * cb.a;
        alpha -= ca.b;
        beta += cb.b;
        s_dyn += integral_f(sc_, t_a, t_b, quad_);
    }

    const int m = static_cast<int>(std::floor(scan_->theta(t_b) / M_PI));
    const double ratio = vsd_a / vs_b;
    const double expected_sign = (m % 2 == 0) ? 1.0 : -1.0;
    if (ratio * expected_sign <= 0.0)
        throw NumericsError(
            "conjugate-point count disagrees with the sign of vdot_s(t_a)/v_s(t_b)");

    const double mag = std::sqrt(ca.M * std::abs(ratio) / (2.0 * M_PI * kc.hbar));

    kc.A = A;
    kc.B = B;
    kc.h = h;
    kc.alpha = alpha;
    kc.beta = beta;
    kc.s = complex(s_dyn - kc.hbar * (0.25 * M_PI + 0.5 * M_PI * double(m)),
                   -kc.hbar * std::log(mag));
    return kc;
}

KernelCoefficients kernel_coefficients(Variant variant, const ShiftedBasis& shifted,
                                       const std::optional<ParticularSolution>& particular,
                                       const Scenario& sc, double t_b,
                                       const QuadratureOptions& quad) {
    KernelEvaluator ker(sc, shifted, particular, variant, quad);
    return ker.coefficients(t_b);
}

complex kernel_S(const ShiftedBasis& shifted, const Scenario& sc, double x_a, double x_b,
                 double t_a, double t_b) {
    if (std::abs(t_a - shifted.t_pin) > 1e-9 * (1.0 + std::abs(t_a)))
        throw ValidationError("t_a must be the pin time of the shifted basis");
    check_window(sc, t_a, t_b);
    const RhoTheta scan = make_scan(sc, shifted);
    require_clean_window(scan, t_a, t_b);

    const double vs_b = shifted.v_s.value(t_b);
    const double vs_scale = shifted.v_s.max_abs_on(t_a, t_b);
    if (std::abs(vs_b) <= 1e-10 * (vs_scale + 1e-300))
        throw CausticError("t_b is a conjugate point of t_a: no unique trajectory", t_b);

    const Coeffs ca = sc.evaluate(t_a);
    const Coeffs cb = sc.evaluate(t_b);
    const double u_a = u_at_pin(shifted);
    const double u_b = shifted.u.value(t_b);
    const double ud_a = shifted.u.deriv(t_a);
    const double vsd_a = shifted.v_s.deriv(t_a);
    const double vsd_b = shifted.v_s.deriv(t_b);
    const double hbar = sc.hbar();

    const double bracket = x_a * x_a * ca.M * (-ud_a / u_a + u_b * vsd_a / (u_a * vs_b)) +
                           x_b * x_b * cb.M * vsd_b / vs_b -
                           2.0 * x_a * x_b * ca.M * vsd_a / vs_b;
    const complex pref = std::sqrt(ca.M * (vsd_a / vs_b) / (2.0 * M_PI * hbar)) *
                         std::exp(complex(0.0, -0.25 * M_PI));
    return pref * std::exp(complex(0.0, bracket / (2.0 * hbar)));
}

complex kernel_F(const ShiftedBasis& shifted, const ParticularSolution& x_p,
                 const Scenario& sc, double x_a, double x_b, double t_a, double t_b,
                 const QuadratureOptions& quad) {
    if (std::abs(t_a - shifted.t_pin) > 1e-9 * (1.0 + std::abs(t_a)))
        throw ValidationError("t_a must be the pin time of the shifted basis");
    check_window(sc, t_a, t_b);
    check_particular_anchor(x_p, t_a);
    const RhoTheta scan = make_scan(sc, shifted);
    require_clean_window(scan, t_a, t_b);

    const double vs_b = shifted.v_s.value(t_b);
    const double vs_scale = shifted.v_s.max_abs_on(t_a, t_b);
    if (std::abs(vs_b) <= 1e-10 * (vs_scale + 1e-300))
        throw CausticError("t_b is a conjugate point of t_a: no unique trajectory", t_b);

    const Coeffs ca = sc.evaluate(t_a);
    const Coeffs cb = sc.evaluate(t_b);
    const double u_a = u_at_pin(shifted);
    const double u_b = shifted.u.value(t_b);
    const double ud_a = shifted.u.deriv(t_a);
    const double vsd_a = shifted.v_s.deriv(t_a);
    const double vsd_b = shifted.v_s.deriv(t_b);
    const double hbar = sc.hbar();

    const double xp_b = x_p.x.value(t_b);
    const double xpd_a = x_p.x.deriv(t_a);
    const double xpd_b = x_p.x.deriv(t_b);

    // literal squared-projection integral; only valid with no interior zero
    const double proj2 = integrate(
        [&](double z) {
            const double vs = shifted.v_s.value(z);
            const double w = x_p.x.value(z) * shifted.v_s.deriv(z) - x_p.x.deriv(z) * vs;
            if (vs == 0.0) return 0.0;  // removable at the window start
            const double q = w / vs;
            return sc.evaluate(z).M * q * q;
        },
        t_a, t_b, quad);

    const double db = x_b - xp_b;
    const double bracket = x_a * x_a * ca.M * (-ud_a / u_a + u_b * vsd_a / (u_a * vs_b)) +
                           db * db * cb.M * vsd_b / vs_b -
                           2.0 * x_a * db * ca.M * vsd_a / vs_b + 2.0 * cb.M * xpd_b * x_b -
                           2.0 * ca.M * xpd_a * x_a - cb.M * (vsd_b / vs_b) * xp_b * xp_b -
                           proj2;
    const complex pref = std::sqrt(ca.M * (vsd_a / vs_b) / (2.0 * M_PI * hbar)) *
                         std::exp(complex(0.0, -0.25 * M_PI));
    return pref * std::exp(complex(0.0, bracket / (2.0 * hbar)));
}

complex kernel_G(const ShiftedBasis& shifted, const ParticularSolution& x_p,
                 const Scenario& sc, double x_a, double x_b, double t_a, double t_b,
                 const QuadratureOptions& quad) {
    const complex base = kernel_F(shifted, x_p, sc, x_a, x_b, t_a, t_b, quad);
    const Coeffs ca = sc.evaluate(t_a);
    const Coeffs cb = sc.evaluate(t_b);
    const double f_int = integral_f(sc, t_a, t_b, quad);
    const double extra = 2.0 * cb.M * cb.a * x_b * x_b - 2.0 * ca.M * ca.a * x_a * x_a +
                         2.0 * cb.b * x_b - 2.0 * ca.b * x_a + 2.0 * f_int;
    return base * std::exp(complex(0.0, extra / (2.0 * sc.hbar())));
}

double CoefficientOdeResiduals::max_residual() const {
    return std::max({res_A, res_B, res_h, res_alpha, res_beta, res_s});
}

CoefficientOdeResiduals check_coefficient_odes(const KernelEvaluator& ker, double t_b,
                                               double h_t) {
    if (!(h_t > 0)) throw ValidationError("finite-difference step must be positive");
    const Scenario& sc = ker.scenario();
    sc.validate_time(t_b - h_t);
    sc.validate_time(t_b + h_t);
    if (ker.conjugate_points(t_b - h_t) != ker.conjugate_points(t_b + h_t))
        throw DomainError("finite-difference window straddles a conjugate point");

    const KernelCoefficients km = ker.coefficients(t_b - h_t);
    const KernelCoefficients kp = ker.coefficients(t_b + h_t);
    const KernelCoefficients k0 = ker.coefficients(t_b);

    const double inv2h = 1.0 / (2.0 * h_t);
    const complex dA = (kp.A - km.A) * inv2h;
    const complex dB = (kp.B - km.B) * inv2h;
    const complex dh = (kp.h - km.h) * inv2h;
    const complex dalpha = (kp.alpha - km.alpha) * inv2h;
    const complex dbeta = (kp.beta - km.beta) * inv2h;
    const complex ds = (kp.s - km.s) * inv2h;

    const EffectiveCoeffs e = effective(sc, ker.variant(), t_b);
    const double hbar = sc.hbar();
    const complex i(0.0, 1.0);
    const complex rA = -k0.h * k0.h / (2.0 * e.M);
    const complex rB = -2.0 * k0.B * k0.B / e.M + 4.0 * e.a * k0.B - 0.5 * e.M * e.c;
    const complex rh = -2.0 * k0.B * k0.h / e.M + 2.0 * e.a * k0.h;
    const complex ralpha = -k0.h * k0.beta / e.M + (e.b / e.M) * k0.h;
    const complex rbeta =
        -2.0 * k0.B * k0.beta / e.M + 2.0 * e.a * k0.beta + 2.0 * (e.b / e.M) * k0.B - e.d;
    const complex rs = i * hbar * k0.B / e.M - k0.beta * k0.beta / (2.0 * e.M) +
                       (e.b / e.M) * k0.beta - e.b * e.b / (2.0 * e.M) + e.f -
                       i * hbar * e.a;

    CoefficientOdeResiduals r;
    r.res_A = std::abs(dA - rA);
    r.res_B = std::abs(dB - rB);
    r.res_h = std::abs(dh - rh);
    r.res_alpha = std::abs(dalpha - ralpha);
    r.res_beta = std::abs(dbeta - rbeta);
    r.res_s = std::abs(ds - rs);
    return r;
}

complex kernel_spectral_sum(const ClassicalBasis& basis, const Scenario& sc, int n_max,
                            double x_a, double x_b, double t_a, double t_b) {
    if (n_max < 0) throw ValidationError("n_max must be nonnegative");
    check_window(sc, t_a, t_b);

    StateFamily fam(sc, basis, std::nullopt, t_a);
    const RhoTheta& pol = fam.polar();
    const double hbar = sc.hbar();
    const double omega = fam.omega();

    const double rho_a = pol.rho(t_a), rhod_a = pol.rho_dot(t_a), th_a = pol.theta(t_a);
    const double rho_b = pol.rho(t_b), rhod_b = pol.rho_dot(t_b), th_b = pol.theta(t_b);
    const double m_a = sc.evaluate(t_a).M;
    const double m_b = sc.evaluate(t_b).M;

    const double y_a = std::sqrt(omega / hbar) * x_a / rho_a;
    const double y_b = std::sqrt(omega / hbar) * x_b / rho_b;

    const double pref = std::sqrt(omega / (M_PI * hbar)) / std::sqrt(rho_a * rho_b);
    const complex gauss =
        std::exp(complex(0.0, m_b * rhod_b * x_b * x_b / (2.0 * hbar * rho_b) -
                                  m_a * rhod_a * x_a * x_a / (2.0 * hbar * rho_a)));
    const complex step = std::exp(complex(0.0, -(th_b - th_a)));
    complex zpow = std::exp(complex(0.0, -0.5 * (th_b - th_a)));

    double ra_prev = 0, ra_cur = std::exp(-0.5 * y_a * y_a);
    double rb_prev = 0, rb_cur = std::exp(-0.5 * y_b * y_b);
    complex sum = 0;
    for (int n = 0; n <= n_max; ++n) {
        sum += ra_cur * rb_cur * zpow;
        zpow *= step;
        const double ra_next = y_a * std::sqrt(2.0 / double(n + 1)) * ra_cur -
                               std::sqrt(double(n) / double(n + 1)) * ra_prev;
        const double rb_next = y_b * std::sqrt(2.0 / double(n + 1)) * rb_cur -
                               std::sqrt(double(n) / double(n + 1)) * rb_prev;
        ra_prev = ra_cur;
        ra_cur = ra_next;
        rb_prev = rb_cur;
        rb_cur = rb_next;
    }
    return pref * gauss * sum;
}

complex short_time_kernel(const Scenario& sc, double t_a, double T, double x_a, double x_b) {
    if (!(T > 0)) throw DomainError("short-time form needs T > 0");
    sc.validate_time(t_a);
    const double m_a = sc.evaluate(t_a).M;
    const double hbar = sc.hbar();
    const double d = x_a - x_b;
    return std::sqrt(m_a / (2.0 * M_PI * hbar * T)) * std::exp(complex(0.0, -0.25 * M_PI)) *
           std::exp(complex(0.0, m_a * d * d / (2.0 * hbar * T)));
}

PropagateResult propagate(const KernelEvaluator& ker, const ComplexGridFunction& psi_in,
                          double t_b, const std::optional<UniformGrid>& out_grid) {
    psi_in.validate();
    const KernelCoefficients kc = ker.coefficients(t_b);
    const double hbar = kc.hbar;
    const complex i_over_h = complex(0.0, 1.0) / hbar;

    const UniformGrid& gin = psi_in.grid;
    const std::size_t n_in = gin.n;
    const double dx = gin.dx();

    std::vector<complex> weighted(n_in);
    for (std::size_t j = 0; j < n_in; ++j) {
        const double x = gin.x(j);
        const double w = (j == 0 || j == n_in - 1) ? 0.5 : 1.0;
        weighted[j] = w * dx * psi_in.values[j] *
                      std::exp(i_over_h * (kc.A * (x * x) + kc.alpha * x));
    }

    PropagateResult out;
    out.input_edge_mass = edge_mass(psi_in);
    out.psi.grid = out_grid.value_or(gin);
    out.psi.t = t_b;
    out.psi.values.assign(out.psi.grid.n, complex(0));

    const UniformGrid gout = out.psi.grid;
    std::vector<complex>& vals = out.psi.values;
    parallel_for(gout.n, [&](std::size_t k) {
        const double xb = gout.x(k);
        const complex outer = std::exp(i_over_h * (kc.B * (xb * xb) + kc.beta * xb + kc.s));
        const complex cross = i_over_h * kc.h * xb;
        complex acc = 0;
        for (std::size_t j = 0; j < n_in; ++j)
            acc += weighted[j] * std::exp(cross * gin.x(j));
        vals[k] = outer * acc;
    });
    return out;
}

}  // namespace quadprop
