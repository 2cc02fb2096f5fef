#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "quadprop/action.hpp"
#include "quadprop/classical.hpp"
#include "quadprop/grid.hpp"
#include "quadprop/scenario.hpp"

namespace quadprop {

/// Coefficients of the propagator's exponent,
///   K = exp[(i/hbar)(A x_a² + B x_b² + h x_a x_b + α x_a + β x_b + s)],
/// with s carrying both the dynamical phase and the normalization
/// (Im s = -hbar·ln|prefactor|).
struct KernelCoefficients {
    Variant variant = Variant::S;
    double t_a = 0, t_b = 0;
    double hbar = 1;
    complex A, B, h, alpha, beta, s;

    complex evaluate(double x_a, double x_b) const;
};

/// Propagator K(x_b, t_b; x_a, t_a) of one variant over a fixed shifted basis
/// and particular solution. Coefficient sets are cached per t_b; evaluation
/// is then a single complex exponential per point.
class KernelEvaluator {
  public:
    KernelEvaluator(const Scenario& sc, const ShiftedBasis& shifted,
                    std::optional<ParticularSolution> particular, Variant variant,
                    const QuadratureOptions& quad = {});

    const KernelCoefficients& coefficients(double t_b) const;
    complex operator()(double x_a, double x_b, double t_b) const;

    double t_a() const { return shifted_.t_pin; }
    Variant variant() const { return variant_; }
    const Scenario& scenario() const { return sc_; }

    /// Zeros of v_s in the open window (t_a, t_b) — each one multiplies the
    /// prefactor by e^{-i pi/2} (continuous-phase square root).
    int conjugate_points(double t_b) const;

  private:
    KernelCoefficients compute(double t_b) const;

    Scenario sc_;
    ShiftedBasis shifted_;
    std::optional<ParticularSolution> particular_;
    Variant variant_;
    QuadratureOptions quad_;
    std::shared_ptr<RhoTheta> scan_;  // polar scan of the normalized (u, v_s)
    mutable std::map<double, KernelCoefficients> cache_;
    mutable std::mutex cache_mutex_;
};

/// Closed-form coefficient extraction (standalone convenience over the
/// evaluator's cache).
KernelCoefficients kernel_coefficients(Variant variant, const ShiftedBasis& shifted,
                                       const std::optional<ParticularSolution>& particular,
                                       const Scenario& sc, double t_b,
                                       const QuadratureOptions& quad = {});

/// The three closed-form propagators assembled literally from their printed
/// expressions (prefactor × exponential; the driven variants evaluate the
/// squared-projection time integral by adaptive quadrature). These routes
/// require a window free of interior conjugate points.
complex kernel_S(const ShiftedBasis& shifted, const Scenario& sc, double x_a, double x_b,
                 double t_a, double t_b);
complex kernel_F(const ShiftedBasis& shifted, const ParticularSolution& x_p,
                 const Scenario& sc, double x_a, double x_b, double t_a, double t_b,
                 const QuadratureOptions& quad = {});
complex kernel_G(const ShiftedBasis& shifted, const ParticularSolution& x_p,
                 const Scenario& sc, double x_a, double x_b, double t_a, double t_b,
                 const QuadratureOptions& quad = {});

/// Residuals of the coefficient evolution system: central finite differences
/// of (A, B, h, α, β, s) in t_b against their closed right-hand sides.
struct CoefficientOdeResiduals {
    double res_A = 0, res_B = 0, res_h = 0, res_alpha = 0, res_beta = 0, res_s = 0;
    double max_residual() const;
};
CoefficientOdeResiduals check_coefficient_odes(const KernelEvaluator& ker, double t_b,
                                               double h_t = 1e-4);

/// Truncated eigenfunction expansion sum_{n<=n_max} psi_n(x_b,t_b) psi_n*(x_a,t_a).
complex kernel_spectral_sum(const ClassicalBasis& basis, const Scenario& sc, int n_max,
                            double x_a, double x_b, double t_a, double t_b);

/// Free short-time form sqrt(M/(2 pi i hbar T)) exp[i M (x_a-x_b)²/(2 hbar T)].
complex short_time_kernel(const Scenario& sc, double t_a, double T, double x_a, double x_b);

struct PropagateResult {
    ComplexGridFunction psi;
    double input_edge_mass = 0;  // caller should treat > ~1e-6 as truncation risk
};

/// psi(x_b, t_b) = ∫ K(x_b, t_b; x_a, t_a) psi_in(x_a) dx_a by trapezoidal
/// quadrature over the input grid; output on out_grid if given, else on the
/// input grid. Parallelized over output points.
PropagateResult propagate(const KernelEvaluator& ker, const ComplexGridFunction& psi_in,
                          double t_b, const std::optional<UniformGrid>& out_grid = {});

}  // namespace quadprop
