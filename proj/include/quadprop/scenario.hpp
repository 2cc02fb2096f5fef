#pragma once

#include <functional>
#include <map>
#include <string>

#include "quadprop/common.hpp"
#include "quadprop/io.hpp"

namespace quadprop {

/// The six time-dependent coefficients of the system at one instant, plus the
/// first derivatives of the three that the derived quantum coefficients and
/// the evolution operators need.
struct Coeffs {
    double M = 1;      // mass, must stay > 0
    double Mdot = 0;
    double w2 = 0;     // squared frequency (may be negative)
    double F = 0;      // external drive
    double a = 0;      // mixing coefficient of the symmetrized x p term
    double adot = 0;
    double b = 0;      // linear momentum shift
    double bdot = 0;
    double f = 0;      // scalar term
};

/// Coefficients of the quantum Hamiltonian that are derived from the
/// classical ones: c = w^2 + 4 a^2 - 2 adot - 2 (Mdot/M) a,
/// d = 2 a b - bdot - F.
struct DerivedCoefficients {
    double c = 0;
    double d = 0;
};

/// A fully specified physical setup: coefficient functions over a closed time
/// interval, plus hbar. Value-semantic; copies share the underlying callables.
class Scenario {
  public:
    using Fn = std::function<double(double)>;

    /// Assemble from explicit callables. M and w2 are required; absent
    /// derivative callables mean "identically zero coefficient".
    struct Functions {
        Fn M, Mdot;
        Fn w2;
        Fn F;
        Fn a, adot;
        Fn b, bdot;
        Fn f;
    };
    static Scenario custom(std::string name, Functions fns, double hbar, double t_min,
                           double t_max);

    /// Built-in families. Unknown names throw ConfigError. Missing parameters
    /// take documented defaults.
    ///   sho:             m0, w0
    ///   free:            m0
    ///   caldirola-kanai: m0, gamma, w0        (M = m0 exp(gamma t))
    ///   paul-trap:       m0, w0, eps, nu      (w2 = w0^2 (1 + eps cos(nu t)))
    ///   driven-sho:      m0, w0, F0, nu       (F = F0 sin(nu t))
    ///   full-quadratic:  m0, gamma, w0, eps, nu, F0, nuF, a0, nua, b0, nub, f0, nuf
    static Scenario preset(const std::string& name,
                           const std::map<std::string, double>& params = {},
                           double hbar = 1.0, double t_min = 0.0, double t_max = 10.0);

    /// Load a sampled scenario from CSV columns t, M, w2, F, a, b, f on a
    /// uniform time grid. Values between nodes come from local 4-point
    /// Lagrange interpolation; derivatives are central differences of that
    /// interpolant with the tabulation step (one-sided second-order stencils
    /// within one step of the ends).
    static Scenario tabulated(const std::string& csv_path, double hbar = 1.0);

    /// Build from a parsed key = value config (keys: preset, hbar, interval,
    /// table_path, preset parameters). Unknown keys are ignored here so
    /// commands can carry their own keys in the same file.
    static Scenario from_config(const KeyValueFile& kv);

    const std::string& name() const { return name_; }
    double hbar() const { return hbar_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }

    /// Throws DomainError if t is outside [t_min, t_max] (tiny slack for
    /// roundoff at the ends).
    void validate_time(double t) const;

    /// All coefficients at time t. Throws ValidationError if M(t) <= 0.
    Coeffs evaluate(double t) const;

    DerivedCoefficients derived(double t) const;

  private:
    Scenario() = default;
    std::string name_;
    Functions fns_;
    double hbar_ = 1.0;
    double t_min_ = 0.0;
    double t_max_ = 0.0;
};

}  // namespace quadprop
