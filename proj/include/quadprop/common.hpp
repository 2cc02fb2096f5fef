#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadprop {

using complex = std::complex<double>;

/// Input that violates a precondition (bad interval, non-positive mass, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation requested outside the scenario's time interval or grid domain.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The shifted solution vanishes at the requested endpoint: the two-point
/// problem is degenerate there and the closed forms blow up.
struct CausticError : std::runtime_error {
    double conjugate_time;
    explicit CausticError(const std::string& msg, double t_conj)
        : std::runtime_error(msg), conjugate_time(t_conj) {}
};

/// An adaptive numeric routine (ODE step control, quadrature) failed to
/// reach its tolerance.
struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Problem reading or interpreting a config / table file.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Number of worker threads to use: min(hardware, QUADPROP_THREADS if set).
int worker_threads();

/// Run fn(i) for i in [0, n), split across worker_threads() threads.
/// Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

inline bool close_rel(double a, double b, double tol) {
    double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol * std::max(scale, 1e-300);
}

}  // namespace quadprop
