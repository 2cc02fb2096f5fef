#include "quadprop/states.hpp"

#include <cmath>

#include "quadprop/quadrature.hpp"

namespace quadprop {

namespace {
void check_order(int n) {
    if (n < 0) throw ValidationError("level index must be nonnegative");
    if (n > kHermiteMaxOrder)
        throw ValidationError("level index exceeds the supported maximum of " +
                              std::to_string(kHermiteMaxOrder));
}
}  // namespace

double hermite(int n, double y) {
    check_order(n);
    if (n == 0) return 1.0;
    double prev = 1.0, cur = 2.0 * y;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * y * cur - 2.0 * double(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double ScaledValue::to_double() const { return std::ldexp(mantissa, static_cast<int>(exponent2)); }

ScaledValue hermite_scaled(int n, double y) {
    check_order(n);
    if (n == 0) return {1.0, 0};
    // carry a shared power of two; renormalize whenever the mantissae grow
    double prev = 1.0, cur = 2.0 * y;
    long e2 = 0;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * y * cur - 2.0 * double(k) * prev;
        prev = cur;
        cur = next;
        const double big = std::max(std::abs(prev), std::abs(cur));
        if (big > 0x1p+256) {
            prev = std::ldexp(prev, -256);
            cur = std::ldexp(cur, -256);
            e2 += 256;
        }
    }
    int e = 0;
    const double m = std::frexp(cur, &e);
    return {m, e2 + e};
}

double hermite_normalized_gaussian(int n, double y) {
    check_order(n);
    const double r0 = std::exp(-0.5 * y * y);
    if (n == 0) return r0;
    double prev = r0, cur = std::sqrt(2.0) * y * r0;
    for (int k = 1; k < n; ++k) {
        const double next = y * std::sqrt(2.0 / double(k + 1)) * cur -
                            std::sqrt(double(k) / double(k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

StateFamily::StateFamily(const Scenario& sc, const ClassicalBasis& basis,
                         std::optional<ParticularSolution> particular, double t_0)
    : sc_(sc), basis_(basis), particular_(std::move(particular)), t_0_(t_0) {
    sc_.validate_time(t_0);
    if (basis_.omega == 0) throw ValidationError("basis invariant is zero");
    if (basis_.omega < 0) {
        // flip v so the invariant (and hence the normalization root) is positive
        basis_.v = DenseSolution::combine(-1.0, basis_.v, 0.0, basis_.v);
        basis_.omega = -basis_.omega;
    }
    polar_ = std::make_shared<RhoTheta>(sc_, basis_.u, basis_.v, basis_.omega,
                                        basis_.t_anchor);
}

double StateFamily::x_p(double t) const {
    return particular_ ? particular_->x.value(t) : 0.0;
}

double StateFamily::xdot_p(double t) const {
    return particular_ ? particular_->x.deriv(t) : 0.0;
}

double StateFamily::cached_integral(std::map<double, double>& cache,
                                    const std::function<double(double)>& integrand,
                                    double t) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    const double val = integrate(integrand, t_0_, t);
    cache.emplace(t, val);
    return val;
}

double StateFamily::chi(double t) const {
    if (!particular_) return 0.0;
    sc_.validate_time(t);
    double chi0 = 0.0;
    const double xp0 = x_p(t_0_);
    const double xp_scale =
        particular_->x.max_abs_on(particular_->x.t_min(), particular_->x.t_max());
    if (std::abs(xp0) > 1e-12 * (xp_scale + 1e-300)) {
        const double v0 = basis_.v.value(t_0_);
        const double v_scale = basis_.v.max_abs_on(basis_.v.t_min(), basis_.v.t_max());
        if (std::abs(v0) <= 1e-12 * (v_scale + 1e-300))
            throw DomainError(
                "phase reference time sits on a zero of v with x_p != 0 there; pick a "
                "different reference time");
        chi0 = -0.5 * sc_.evaluate(t_0_).M * (basis_.v.deriv(t_0_) / v0) * xp0 * xp0;
    }
    const double drive = cached_integral(
        chi_cache_,
        [this](double z) {
            const Coeffs c = sc_.evaluate(z);
            const double xp = particular_->x.value(z);
            const double xpd = particular_->x.deriv(z);
            return 0.5 * c.M * (c.w2 * xp * xp - xpd * xpd);
        },
        t);
    return chi0 + drive;
}

double StateFamily::chi_verbatim(double t) const {
    if (!particular_) return 0.0;
    sc_.validate_time(t);
    const double lo = std::min(t_0_, t), hi = std::max(t_0_, t);
    if (polar_->count_v_zeros(lo, hi) > 0)
        throw DomainError(
            "the literal phase expression is singular: v vanishes inside the window; use the "
            "drive-energy form instead");
    const double v_scale = basis_.v.max_abs_on(lo, hi);
    for (double te : {t_0_, t})
        if (std::abs(basis_.v.value(te)) <= 1e-10 * (v_scale + 1e-300))
            throw DomainError("the literal phase expression is singular at the window edge");
    const double m_t = sc_.evaluate(t).M;
    const double boundary =
        -0.5 * m_t * (basis_.v.deriv(t) / basis_.v.value(t)) * x_p(t) * x_p(t);
    const double integral = integrate(
        [this](double z) {
            const double vv = basis_.v.value(z);
            const double proj = x_p(z) * basis_.v.deriv(z) / vv - xdot_p(z);
            return 0.5 * sc_.evaluate(z).M * proj * proj;
        },
        t_0_, t);
    return boundary - integral;
}

double StateFamily::integral_f(double t) const {
    sc_.validate_time(t);
    return cached_integral(
        f_cache_, [this](double z) { return sc_.evaluate(z).f; }, t);
}

complex StateFamily::psi(Variant variant, int n, double x, double t) const {
    check_order(n);
    sc_.validate_time(t);
    const Coeffs c = sc_.evaluate(t);
    const double hbar = sc_.hbar();
    const double omega = basis_.omega;
    const double rho = polar_->rho(t);
    const double rho_dot = polar_->rho_dot(t);
    const double theta = polar_->theta(t);

    const double xp = variant == Variant::S ? 0.0 : x_p(t);
    const double dx = x - xp;
    const double y = std::sqrt(omega / hbar) * dx / rho;
    const double radial = hermite_normalized_gaussian(n, y);
    const double amp = std::pow(omega / (M_PI * hbar), 0.25) / std::sqrt(rho);

    double phase = -(double(n) + 0.5) * theta + c.M * rho_dot * dx * dx / (2.0 * hbar * rho);
    if (variant != Variant::S) phase += (c.M * xdot_p(t) * x + chi(t)) / hbar;
    if (variant == Variant::G)
        phase += (c.M * c.a * x * x + c.b * x + integral_f(t)) / hbar;
    return amp * radial * std::exp(complex(0.0, phase));
}

ComplexGridFunction StateFamily::psi_grid(Variant variant, int n, const UniformGrid& grid,
                                          double t) const {
    return sample_grid(grid, t, [&](double x) { return psi(variant, n, x, t); });
}

GaussianParams StateFamily::gaussian_params(double t) const {
    const Coeffs c = sc_.evaluate(t);
    const double hbar = sc_.hbar();
    const double rho = polar_->rho(t), rho_dot = polar_->rho_dot(t);
    GaussianParams g;
    g.gamma1 = basis_.omega / (hbar * rho * rho);
    g.gamma2 = -c.M * rho_dot / (hbar * rho);
    g.gamma1_prime = g.gamma1;
    g.gamma2_prime = -(c.M / hbar) * (2.0 * c.a + rho_dot / rho);
    return g;
}

double StateFamily::classical_momentum(double t) const {
    const Coeffs c = sc_.evaluate(t);
    return c.M * xdot_p(t) + 2.0 * c.M * c.a * x_p(t) + c.b;
}

double StateFamily::extract_delta(Variant variant, double t) const {
    const double hbar = sc_.hbar();
    const double xp = variant == Variant::S ? 0.0 : x_p(t);
    double p_used = 0.0;
    if (variant == Variant::F) p_used = sc_.evaluate(t).M * xdot_p(t);
    if (variant == Variant::G) p_used = classical_momentum(t);
    const complex value = psi(variant, 0, xp, t) * std::exp(complex(0, -xp * p_used / hbar));
    return std::arg(value);
}

ComplexGridFunction apply_unitary_U(const Scenario& sc, const ComplexGridFunction& psi,
                                    double t, double t_0) {
    sc.validate_time(t);
    sc.validate_time(t_0);
    const Coeffs c = sc.evaluate(t);
    const double hbar = sc.hbar();
    const double f_int = integrate([&](double z) { return sc.evaluate(z).f; }, t_0, t);
    ComplexGridFunction out = psi;
    for (std::size_t j = 0; j < out.values.size(); ++j) {
        const double x = out.grid.x(j);
        const double phase = (c.M * c.a * x * x + c.b * x + f_int) / hbar;
        out.values[j] *= std::exp(complex(0.0, phase));
    }
    return out;
}

}  // namespace quadprop
