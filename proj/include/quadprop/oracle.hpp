#pragma once

#include <functional>

#include "quadprop/action.hpp"
#include "quadprop/grid.hpp"
#include "quadprop/scenario.hpp"

namespace quadprop {

/// Apply the variant's Hamiltonian to a sampled state with 4th-order spatial
/// stencils. Variant S: kinetic + (1/2)Mw²x²; F adds -Fx; G applies the full
/// operator (kinetic, symmetrized velocity-coupling a-term, (1/2)Mc x²,
/// -(b/M)p̂, d x, and the scalar b²/2M - f).
ComplexGridFunction hamiltonian_apply(const Scenario& sc, const ComplexGridFunction& psi,
                                      double t, Variant variant = Variant::G);

struct ResidualReport {
    double l2_residual = 0;    // ||i hbar ∂_t psi - H psi||_2 / ||psi||_2
    double linf_residual = 0;  // max |r| / max |psi|
    double edge_mass = 0;
    double dt = 0;
    std::size_t n_points = 0;
};

/// Finite-difference Schrödinger residual of an evaluable state: 4th-order
/// central time stencil at t (needs psi at t ± dt, t ± 2dt).
ResidualReport schrodinger_residual(const std::function<complex(double, double)>& psi_fn,
                                    const Scenario& sc, const UniformGrid& grid, double t,
                                    double dt, Variant variant = Variant::G);

/// Implicit-midpoint (Crank–Nicolson) evolution with a Hermitian
/// tridiagonal discretization of the full Hamiltonian, Dirichlet edges,
/// coefficients at step midpoints. Unconditionally stable, 2nd order in dt.
ComplexGridFunction crank_nicolson_evolve(const Scenario& sc, const ComplexGridFunction& psi0,
                                          double t_a, double t_b, int n_steps,
                                          Variant variant = Variant::G);

}  // namespace quadprop
