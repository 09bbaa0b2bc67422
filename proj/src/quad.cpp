#include "focklab/quad.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cstdio>

namespace focklab::quad {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights come from
// the squared first eigenvector components scaled by the zeroth moment.
void golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0,
                  std::vector<double>& nodes, std::vector<double>& weights) {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) J(i, i) = diag[i];
    for (int i = 0; i + 1 < n; ++i) {
        J(i, i + 1) = offdiag[i];
        J(i + 1, i) = offdiag[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = es.eigenvalues()[i];
        double v0 = es.eigenvectors()(0, i);
        weights[i] = mu0 * v0 * v0;
    }
}

} // namespace

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw config_error("gauss_legendre_01: need at least one node");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd off(n - 1 > 0 ? n - 1 : 0);
    for (int k = 1; k < n; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    golub_welsch(diag, off, 2.0, nodes, weights);
    // map [-1,1] -> [0,1]
    for (int i = 0; i < n; ++i) {
        nodes[i] = 0.5 * (nodes[i] + 1.0);
        weights[i] *= 0.5;
    }
}

double gauss_tail_radius(double alpha, double tol) {
    if (alpha <= 0.0) throw config_error("gauss_tail_radius: alpha must be positive");
    if (tol <= 0.0) throw config_error("gauss_tail_radius: tolerance must be positive");
    double t = std::log(M_PI / (alpha * tol));
    return t > 0.0 ? std::sqrt(t / alpha) : 0.0;
}

QuadratureGrid build_plane_grid(double alpha, int points_per_axis, double tail_tolerance) {
    if (alpha <= 0.0) throw config_error("build_plane_grid: alpha must be positive");
    if (tail_tolerance <= 0.0) throw config_error("build_plane_grid: tail_tolerance must be positive");
    if (points_per_axis < 8) throw config_error("build_plane_grid: points_per_axis must be >= 8");

    const int n = points_per_axis;
    // Midpoint tensor rule on [-nh/2, nh/2]^2. For integrands of the class
    // (polynomial) x (shifted Gaussians with decay >= alpha) the aliasing error
    // is e^{-pi^2/(alpha h^2)}-small uniformly in the shift, so accuracy is
    // limited by the tail outside the box. The step balances polynomial
    // resolution (pi/h)^2/alpha against reachable mass alpha*(nh/2)^2.
    double h = std::pow(2.0 * M_PI * M_PI, 0.25) / std::sqrt(alpha * n);
    const double L = std::log(M_PI / (alpha * tail_tolerance));
    if (L > 0.0) h = std::min(h, M_PI / std::sqrt(alpha * L));

    const double reach = 0.5 * n * h;
    const double required = gauss_tail_radius(alpha, tail_tolerance);
    if (reach < required) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "build_plane_grid: %d points/axis reach |x| <= %.3f but tail tolerance %.3g "
                      "needs radius %.3f; increase points_per_axis",
                      points_per_axis, reach, tail_tolerance, required);
        throw config_error(msg);
    }

    QuadratureGrid g;
    g.kind = GridKind::plane;
    g.alpha = alpha;
    g.tolerance = tail_tolerance;
    g.truncation_radius = reach;
    g.nodes.reserve(static_cast<std::size_t>(n) * n);
    g.weights.reserve(static_cast<std::size_t>(n) * n);
    const double w2 = h * h;
    for (int i = 0; i < n; ++i) {
        const double x = (i - 0.5 * n + 0.5) * h;
        for (int j = 0; j < n; ++j) {
            const double y = (j - 0.5 * n + 0.5) * h;
            g.nodes.push_back(cplx{x, y});
            g.weights.push_back(w2);
        }
    }
    return g;
}

QuadratureGrid build_disk_grid(cplx center, double radius, int points) {
    if (!(radius > 0.0)) throw config_error("build_disk_grid: radius must be positive");
    if (points < 2) throw config_error("build_disk_grid: need at least 2 radial points");
    if (!std::isfinite(center.real()) || !std::isfinite(center.imag()))
        throw config_error("build_disk_grid: center must be finite");

    std::vector<double> rho, rw;
    gauss_legendre_01(points, rho, rw);

    const int ntheta = 2 * points + 1;
    QuadratureGrid g;
    g.kind = GridKind::disk;
    g.center = center;
    g.radius = radius;
    g.exactness_degree = 2 * points - 2;
    g.nodes.reserve(static_cast<std::size_t>(points) * ntheta);
    g.weights.reserve(static_cast<std::size_t>(points) * ntheta);
    const double dtheta = 2.0 * M_PI / ntheta;
    for (int i = 0; i < points; ++i) {
        const double r = rho[i] * radius;
        const double wr = rw[i] * radius * r * dtheta; // rho drho dtheta
        for (int j = 0; j < ntheta; ++j) {
            const double th = dtheta * j;
            g.nodes.push_back(center + cplx{r * std::cos(th), r * std::sin(th)});
            g.weights.push_back(wr);
        }
    }
    return g;
}

double plane_gaussian_mass(const QuadratureGrid& grid) {
    if (grid.kind != GridKind::plane) throw config_error("plane_gaussian_mass: not a plane grid");
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i)
        acc += grid.weights[i] * std::exp(-grid.alpha * std::norm(grid.nodes[i]));
    return acc;
}

namespace detail {

[[noreturn]] void throw_nonfinite(cplx node, double magnitude) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "integrate: non-finite integrand value (|v| = %.3g) at node (%.6g, %.6g)",
                  magnitude, node.real(), node.imag());
    throw numeric_error(msg);
}

} // namespace detail

} // namespace focklab::quad
