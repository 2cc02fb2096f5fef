#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "quadprop/action.hpp"
#include "quadprop/classical.hpp"
#include "quadprop/grid.hpp"
#include "quadprop/scenario.hpp"

namespace quadprop {

inline constexpr int kHermiteMaxOrder = 512;

/// Physicists' Hermite polynomial by the three-term recurrence. Overflows
/// double range for large n·y²; see hermite_scaled.
double hermite(int n, double y);

/// Exponent-carrying value m·2^e for overflow-free large-n evaluation.
struct ScaledValue {
    double mantissa = 0;
    long exponent2 = 0;
    double to_double() const;
};
ScaledValue hermite_scaled(int n, double y);

/// r_n(y) = H_n(y) e^{-y²/2} / sqrt(2^n n!): bounded for all n, y; the stable
/// building block of the wave functions.
double hermite_normalized_gaussian(int n, double y);

struct GaussianParams {
    double gamma1 = 0;        // Omega / (hbar rho²) > 0
    double gamma2 = 0;        // -M rho_dot / (hbar rho)
    double gamma1_prime = 0;  // equals gamma1
    double gamma2_prime = 0;  // -(M/hbar)(2a + rho_dot/rho)
};

/// Evaluates the exact wave functions of the three related systems on a
/// common classical basis.
///
/// The family is built from one homogeneous basis (u, v) with invariant
/// Omega > 0 (v is negated on construction if needed) and, for the driven
/// variants, a particular solution x_p. Phases referenced to t_0.
class StateFamily {
  public:
    StateFamily(const Scenario& sc, const ClassicalBasis& basis,
                std::optional<ParticularSolution> particular, double t_0);

    complex psi(Variant variant, int n, double x, double t) const;
    ComplexGridFunction psi_grid(Variant variant, int n, const UniformGrid& grid,
                                 double t) const;

    GaussianParams gaussian_params(double t) const;
    double classical_momentum(double t) const;  // M xdot_p + 2 M a x_p + b
    double x_p(double t) const;
    double xdot_p(double t) const;

    /// Global phase delta(t) of the n=0 state in its Gaussian normal form
    /// (real by construction; continuity is a correctness test).
    double extract_delta(Variant variant, double t) const;

    /// Time-dependent phase action chi(t) entering the driven variants,
    /// computed through the drive-energy integral (valid at any t).
    double chi(double t) const;
    /// Same quantity assembled literally from the v-dependent expression
    /// (boundary term with vdot/v plus the squared integral). Only valid when
    /// v has no zero in [t_0, t]; otherwise throws DomainError.
    double chi_verbatim(double t) const;

    double integral_f(double t) const;  // ∫_{t_0}^t f dz

    const RhoTheta& polar() const { return *polar_; }
    const Scenario& scenario() const { return sc_; }
    double omega() const { return basis_.omega; }
    double t_0() const { return t_0_; }

  private:
    double cached_integral(std::map<double, double>& cache,
                           const std::function<double(double)>& integrand, double t) const;

    Scenario sc_;
    ClassicalBasis basis_;
    std::optional<ParticularSolution> particular_;
    double t_0_ = 0;
    std::shared_ptr<RhoTheta> polar_;
    mutable std::map<double, double> chi_cache_, f_cache_;
    mutable std::mutex cache_mutex_;
};

/// Pointwise multiplication by the pure phase
/// exp[(i/hbar)(M a x² + b x + ∫_{t_0}^t f dz)] mapping the driven-oscillator
/// states onto the general system's states.
ComplexGridFunction apply_unitary_U(const Scenario& sc, const ComplexGridFunction& psi,
                                    double t, double t_0);

}  // namespace quadprop
