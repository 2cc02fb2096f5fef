#include "quadprop/grid.hpp"

#include <cmath>

namespace quadprop {

std::vector<double> UniformGrid::points() const {
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = x(j);
    return out;
}

void UniformGrid::validate() const {
    if (n < 16) throw ValidationError("grid needs at least 16 points");
    if (!(x_max > x_min)) throw ValidationError("grid needs x_max > x_min");
    if (!std::isfinite(x_min) || !std::isfinite(x_max))
        throw ValidationError("grid bounds must be finite");
}

void ComplexGridFunction::validate() const {
    grid.validate();
    if (values.size() != grid.n)
        throw ValidationError("grid function size does not match its grid");
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError("grid function holds non-finite values");
}

ComplexGridFunction sample_grid(const UniformGrid& grid, double t,
                                const std::function<complex(double)>& fn) {
    grid.validate();
    ComplexGridFunction out;
    out.grid = grid;
    out.t = t;
    out.values.resize(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) out.values[j] = fn(grid.x(j));
    return out;
}

namespace {
void require_aligned(const ComplexGridFunction& f, const ComplexGridFunction& g) {
    if (!(f.grid == g.grid)) throw ValidationError("grid functions live on different grids");
}
}  // namespace

complex inner_product(const ComplexGridFunction& f, const ComplexGridFunction& g) {
    require_aligned(f, g);
    const std::size_t n = f.grid.n;
    complex acc = 0.5 * (std::conj(f.values[0]) * g.values[0] +
                         std::conj(f.values[n - 1]) * g.values[n - 1]);
    for (std::size_t j = 1; j + 1 < n; ++j) acc += std::conj(f.values[j]) * g.values[j];
    return acc * f.grid.dx();
}

double l2_norm(const ComplexGridFunction& f) {
    return std::sqrt(std::abs(inner_product(f, f)));
}

double l2_distance(const ComplexGridFunction& f, const ComplexGridFunction& g) {
    require_aligned(f, g);
    ComplexGridFunction d = f;
    for (std::size_t j = 0; j < d.values.size(); ++j) d.values[j] -= g.values[j];
    return l2_norm(d);
}

double edge_mass(const ComplexGridFunction& f, double band) {
    const std::size_t n = f.grid.n;
    const auto n_band = static_cast<std::size_t>(std::ceil(band * double(n)));
    double outer = 0, total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        const double m = w * std::norm(f.values[j]);
        total += m;
        if (j < n_band || j >= n - n_band) outer += m;
    }
    return total > 0 ? outer / total : 0.0;
}

namespace {

/// Apply a finite-difference stencil table: rows give (first index, weights).
struct StencilRow {
    long long start;
    std::vector<double> w;
};

std::vector<complex> apply_stencil(const UniformGrid& grid, const std::vector<complex>& f,
                                   const StencilRow& left0, const StencilRow& left1,
                                   const StencilRow& center, const StencilRow& right1,
                                   const StencilRow& right0, double scale) {
    if (f.size() != grid.n) throw ValidationError("stencil input size mismatch");
    if (grid.n < 8) throw ValidationError("grid too small for 4th-order stencils");
    const std::size_t n = grid.n;
    std::vector<complex> out(n);
    auto row_at = [&](std::size_t j) -> const StencilRow& {
        if (j == 0) return left0;
        if (j == 1) return left1;
        if (j == n - 2) return right1;
        if (j == n - 1) return right0;
        return center;
    };
    for (std::size_t j = 0; j < n; ++j) {
        const StencilRow& r = row_at(j);
        complex acc = 0;
        for (std::size_t k = 0; k < r.w.size(); ++k)
            acc += r.w[k] * f[static_cast<std::size_t>(static_cast<long long>(j) + r.start +
                                                       static_cast<long long>(k))];
        out[j] = acc * scale;
    }
    return out;
}

}  // namespace

std::vector<complex> deriv1_4th(const UniformGrid& grid, const std::vector<complex>& f) {
    const double h = grid.dx();
    const StencilRow forward{0, {-25. / 12, 4., -3., 4. / 3, -1. / 4}};
    const StencilRow near{-1, {-1. / 4, -5. / 6, 3. / 2, -1. / 2, 1. / 12}};
    const StencilRow center{-2, {1. / 12, -8. / 12, 0., 8. / 12, -1. / 12}};
    const StencilRow near_r{-3, {-1. / 12, 1. / 2, -3. / 2, 5. / 6, 1. / 4}};
    const StencilRow backward{-4, {1. / 4, -4. / 3, 3., -4., 25. / 12}};
    return apply_stencil(grid, f, forward, near, center, near_r, backward, 1.0 / h);
}

std::vector<complex> deriv2_4th(const UniformGrid& grid, const std::vector<complex>& f) {
    const double h = grid.dx();
    const StencilRow forward{0, {15. / 4, -77. / 6, 107. / 6, -13., 61. / 12, -5. / 6}};
    const StencilRow near{-1, {5. / 6, -5. / 4, -1. / 3, 7. / 6, -1. / 2, 1. / 12}};
    const StencilRow center{-2, {-1. / 12, 16. / 12, -30. / 12, 16. / 12, -1. / 12}};
    const StencilRow near_r{-4, {1. / 12, -1. / 2, 7. / 6, -1. / 3, -5. / 4, 5. / 6}};
    const StencilRow backward{-5, {-5. / 6, 61. / 12, -13., 107. / 6, -77. / 6, 15. / 4}};
    return apply_stencil(grid, f, forward, near, center, near_r, backward, 1.0 / (h * h));
}

std::vector<complex> deriv1_2nd(const UniformGrid& grid, const std::vector<complex>& f) {
    const double h = grid.dx();
    const StencilRow forward{0, {-3. / 2, 2., -1. / 2}};
    const StencilRow center{-1, {-1. / 2, 0., 1. / 2}};
    const StencilRow backward{-2, {1. / 2, -2., 3. / 2}};
    return apply_stencil(grid, f, forward, center, center, center, backward, 1.0 / h);
}

std::vector<complex> deriv2_2nd(const UniformGrid& grid, const std::vector<complex>& f) {
    const double h = grid.dx();
    const StencilRow forward{0, {2., -5., 4., -1.}};
    const StencilRow center{-1, {1., -2., 1.}};
    const StencilRow backward{-3, {-1., 4., -5., 2.}};
    return apply_stencil(grid, f, forward, center, center, center, backward, 1.0 / (h * h));
}

}  // namespace quadprop
