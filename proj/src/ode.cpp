#include "quadprop/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "quadprop/common.hpp"

namespace quadprop {

namespace {

using State = std::array<double, 2>;

double hermite(double s, double h, double y0, double m0, double y1, double m1) {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * m0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * h * m1;
}

}  // namespace

DenseSolution::DenseSolution(double t0, double h, std::vector<double> x, std::vector<double> xd,
                             std::vector<double> xdd)
    : t0_(t0), h_(h), x_(std::move(x)), xd_(std::move(xd)), xdd_(std::move(xdd)) {
    if (x_.size() < 2 || x_.size() != xd_.size() || x_.size() != xdd_.size() || h_ <= 0)
        throw ValidationError("DenseSolution: inconsistent storage arrays");
}

void DenseSolution::check_range(double t) const {
    const double slack = 1e-9 * (t_max() - t_min());
    if (t < t_min() - slack || t > t_max() + slack)
        throw DomainError("DenseSolution: t outside the integrated interval");
}

double DenseSolution::value(double t) const {
    check_range(t);
    const auto n = x_.size() - 1;
    auto j = static_cast<std::size_t>(std::clamp((t - t0_) / h_, 0.0, double(n - 1)));
    j = std::min(j, n - 1);
    const double s = (t - (t0_ + h_ * double(j))) / h_;
    return hermite(s, h_, x_[j], xd_[j], x_[j + 1], xd_[j + 1]);
}

double DenseSolution::deriv(double t) const {
    check_range(t);
    const auto n = x_.size() - 1;
    auto j = static_cast<std::size_t>(std::clamp((t - t0_) / h_, 0.0, double(n - 1)));
    j = std::min(j, n - 1);
    const double s = (t - (t0_ + h_ * double(j))) / h_;
    return hermite(s, h_, xd_[j], xdd_[j], xd_[j + 1], xdd_[j + 1]);
}

double DenseSolution::max_abs_on(double t1, double t2) const {
    if (t2 < t1) std::swap(t1, t2);
    double best = 0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
        const double t = t0_ + h_ * double(j);
        if (t >= t1 - h_ && t <= t2 + h_) best = std::max(best, std::abs(x_[j]));
    }
    // Fall back to the interval endpoints when no node landed inside.
    best = std::max(best, std::abs(value(std::clamp(t1, t_min(), t_max()))));
    best = std::max(best, std::abs(value(std::clamp(t2, t_min(), t_max()))));
    return best;
}

DenseSolution DenseSolution::combine(double c1, const DenseSolution& s1, double c2,
                                     const DenseSolution& s2) {
    if (s1.x_.size() != s2.x_.size() || s1.t0_ != s2.t0_ || s1.h_ != s2.h_)
        throw ValidationError("DenseSolution::combine: storage grids differ");
    DenseSolution out;
    out.t0_ = s1.t0_;
    out.h_ = s1.h_;
    const auto n = s1.x_.size();
    out.x_.resize(n);
    out.xd_.resize(n);
    out.xdd_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.x_[j] = c1 * s1.x_[j] + c2 * s2.x_[j];
        out.xd_[j] = c1 * s1.xd_[j] + c2 * s2.xd_[j];
        out.xdd_[j] = c1 * s1.xdd_[j] + c2 * s2.xdd_[j];
    }
    return out;
}

namespace {

/// Integrate from t_start to t_end (either direction), writing x, xdot, xddot
/// at every storage node passed. Node j corresponds to t0 + h*j; `nodes` spans
/// the whole scenario interval and this pass fills the sub-range it covers.
void integrate_directed(const Scenario& sc, bool with_drive, State y0, double t_start,
                        double t_end, double t0, double h, std::vector<double>& x,
                        std::vector<double>& xd, std::vector<double>& xdd,
                        const IntegratorOptions& opt) {
    namespace ode = boost::numeric::odeint;
    const double dir = t_end > t_start ? 1.0 : -1.0;
    const double span = std::abs(t_end - t_start);
    if (span == 0) return;

    auto rhs = [&](const State& y, State& dydt, double t) {
        const Coeffs c = sc.evaluate(t);
        const double g = with_drive ? c.F : 0.0;
        dydt[0] = y[1];
        dydt[1] = (g - c.Mdot * y[1]) / c.M - c.w2 * y[0];
    };
    auto stepper =
        ode::make_dense_output(opt.atol, opt.rtol, ode::runge_kutta_dopri5<State>());
    stepper.initialize(y0, t_start, dir * std::min(span, 1e-3 * (1 + span)));

    // next storage node index to emit, walking in `dir`
    auto node_time = [&](long long j) { return t0 + h * double(j); };
    long long j_next;
    if (dir > 0)
        j_next = static_cast<long long>(std::ceil((t_start - t0) / h - 1e-9));
    else
        j_next = static_cast<long long>(std::floor((t_start - t0) / h + 1e-9));

    const long long j_total = static_cast<long long>(x.size()) - 1;
    auto emit_through = [&](double t_cur) {
        State y;
        while (j_next >= 0 && j_next <= j_total &&
               dir * (t_cur - node_time(j_next)) >= -1e-12 * (1 + std::abs(t_cur))) {
            const double tn = node_time(j_next);
            if (dir * (tn - t_start) >= 0) {  // node belongs to this pass
                stepper.calc_state(tn, y);
                State dydt;
                rhs(y, dydt, tn);
                const auto j = static_cast<std::size_t>(j_next);
                x[j] = y[0];
                xd[j] = y[1];
                xdd[j] = dydt[1];
            }
            j_next += dir > 0 ? 1 : -1;
        }
    };

    const int max_steps = 2000000;
    int steps = 0;
    while (dir * (t_end - stepper.current_time()) > 1e-14 * (1 + std::abs(t_end))) {
        const double remaining = t_end - stepper.current_time();
        if (std::abs(stepper.current_time_step()) > std::abs(remaining))
            stepper.initialize(stepper.current_state(), stepper.current_time(), remaining);
        try {
            stepper.do_step(rhs);
        } catch (const DomainError&) {
            throw;
        } catch (const ValidationError&) {
            throw;
        } catch (const std::exception& e) {
            throw NumericsError(std::string("equation-of-motion integration failed: ") +
                                e.what());
        }
        emit_through(std::min(dir * stepper.current_time(), dir * t_end) * dir);
        if (++steps > max_steps)
            throw NumericsError("equation-of-motion integration exceeded the step budget");
    }
    emit_through(t_end);
}

}  // namespace

DenseSolution integrate_eom(const Scenario& sc, double t_ic, double x0, double v0,
                            bool with_drive, const IntegratorOptions& opt) {
    const double ta = sc.t_min(), tb = sc.t_max();
    sc.validate_time(t_ic);
    if (!(opt.storage_step > 0) || !(opt.rtol > 0) || !(opt.atol > 0))
        throw ValidationError("integrate_eom: tolerances and storage step must be positive");

    const double span = tb - ta;
    const auto n_cells = static_cast<std::size_t>(std::ceil(span / opt.storage_step));
    const double h = span / double(std::max<std::size_t>(n_cells, 1));
    std::vector<double> x(n_cells + 1, 0.0), xd(n_cells + 1, 0.0), xdd(n_cells + 1, 0.0);

    const State y0{x0, v0};
    integrate_directed(sc, with_drive, y0, t_ic, tb, ta, h, x, xd, xdd, opt);
    if (t_ic > ta + 1e-14 * (1 + span))
        integrate_directed(sc, with_drive, y0, t_ic, ta, ta, h, x, xd, xdd, opt);
    return DenseSolution(ta, h, std::move(x), std::move(xd), std::move(xdd));
}

}  // namespace quadprop
