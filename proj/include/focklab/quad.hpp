#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "focklab/errors.hpp"

namespace focklab::quad {

using cplx = std::complex<double>;

enum class GridKind { plane, disk };

// Quadrature rule with plain area weights: integrate(grid, f) = sum w_i f(z_i).
// Plane grids are adapted to the weight e^{-alpha|z|^2}; the Gaussian factor
// stays inside the integrand, so the same grid serves every weighted norm
// whose decay is at least the design decay.
struct QuadratureGrid {
    GridKind kind = GridKind::plane;
    std::vector<cplx> nodes;
    std::vector<double> weights;

    // plane only
    double alpha = 0.0;             // design decay rate
    double tolerance = 0.0;         // declared tail tolerance
    double truncation_radius = 0.0; // max |node|; evaluations beyond +2 are refused downstream

    // disk only
    cplx center{0.0, 0.0};
    double radius = 0.0;
    int exactness_degree = 0; // polynomials in (w, wbar) up to this total degree are exact
};

// Smallest R with (pi/alpha) e^{-alpha R^2} <= tol.
double gauss_tail_radius(double alpha, double tol);

// Midpoint tensor rule in (x, y) scaled for the decay e^{-alpha|z|^2}, spectrally
// accurate for Gaussian-enveloped integrands uniformly in their center. Throws
// config_error if points_per_axis cannot reach the radius required by
// tail_tolerance.
QuadratureGrid build_plane_grid(double alpha, int points_per_axis, double tail_tolerance);

// Gauss-Legendre radial x uniform angular product rule on B(center, radius).
// `points` is the radial node count; the angular count is 2*points+1.
QuadratureGrid build_disk_grid(cplx center, double radius, int points);

// One-dimensional Gauss-Legendre rule on [0,1] (exposed for reuse and testing).
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

namespace detail {
// Values with magnitude above this are treated as non-finite to stop silent
// overflow of kernel evaluations far outside the truncation radius.
inline constexpr double kMagnitudeCap = 1e300;

[[noreturn]] void throw_nonfinite(cplx node, double magnitude);

inline void check_value(double v, cplx node) {
    if (!std::isfinite(v) || std::abs(v) > kMagnitudeCap) throw_nonfinite(node, std::abs(v));
}
inline void check_value(const cplx& v, cplx node) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > kMagnitudeCap)
        throw_nonfinite(node, std::abs(v));
}
} // namespace detail

// sum_i w_i f(z_i); deterministic left-to-right accumulation.
template <class F>
auto integrate(const QuadratureGrid& grid, F&& f) {
    using R = std::invoke_result_t<F, cplx>;
    static_assert(std::is_same_v<R, double> || std::is_same_v<R, cplx>,
                  "integrand must return double or complex<double>");
    R acc{};
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        R v = f(grid.nodes[i]);
        detail::check_value(v, grid.nodes[i]);
        acc += grid.weights[i] * v;
    }
    return acc;
}

// sum w_i e^{-alpha|z_i|^2} over a plane grid; the grid invariant is that this
// approximates pi/alpha within the declared tolerance.
double plane_gaussian_mass(const QuadratureGrid& grid);

} // namespace focklab::quad
