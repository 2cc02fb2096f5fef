#pragma once

#include <vector>

#include "quadprop/scenario.hpp"

namespace quadprop {

struct IntegratorOptions {
    double rtol = 1e-11;
    double atol = 1e-13;
    /// Target spacing of the stored dense grid; value+derivative cubic
    /// interpolation on it contributes O(step^4) ~ 1e-13 error.
    double storage_step = 2e-3;
};

/// A solution of a scalar 2nd-order ODE stored on a fine uniform grid, with
/// value and first derivative evaluable anywhere on the integration interval.
/// Each component is interpolated by a cubic Hermite segment using its own
/// stored derivative (x with xdot, xdot with xddot), keeping both 4th-order.
class DenseSolution {
  public:
    DenseSolution() = default;
    DenseSolution(double t0, double h, std::vector<double> x, std::vector<double> xd,
                  std::vector<double> xdd);

    double value(double t) const;
    double deriv(double t) const;
    double t_min() const { return t0_; }
    double t_max() const { return t0_ + h_ * static_cast<double>(x_.size() - 1); }
    bool empty() const { return x_.empty(); }

    /// Largest |value| over stored nodes within [t1, t2]; scale reference for
    /// degeneracy thresholds.
    double max_abs_on(double t1, double t2) const;

    /// Node-wise linear combination c1*s1 + c2*s2 (exact; requires matching
    /// grids, which solutions of the same scenario share).
    static DenseSolution combine(double c1, const DenseSolution& s1, double c2,
                                 const DenseSolution& s2);

  private:
    void check_range(double t) const;
    double t0_ = 0, h_ = 1;
    std::vector<double> x_, xd_, xdd_;
};

/// Integrate d/dt(M xdot) + M w2 x = g over the whole scenario interval with
/// initial data (x0, v0) given at t_ic (which may be interior: both
/// directions are integrated). g = F(t) when with_drive, else 0.
/// Uses an adaptive RK5(4) pair with dense output sampled onto the storage
/// grid. Throws NumericsError if step control fails.
DenseSolution integrate_eom(const Scenario& sc, double t_ic, double x0, double v0,
                            bool with_drive, const IntegratorOptions& opt = {});

}  // namespace quadprop
