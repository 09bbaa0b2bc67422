#include "focklab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "focklab/parallel.hpp"

namespace focklab::fock {

namespace {

constexpr double kExpArgLimit = 700.0;

void require_plane_grid(const quad::QuadratureGrid& grid, double needed_decay, const char* op) {
    if (grid.kind != quad::GridKind::plane)
        throw config_error(std::string(op) + ": plane grid required");
    if (grid.alpha > needed_decay * (1.0 + 1e-12)) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "%s: grid built for decay %.6g cannot serve decay %.6g",
                      op, grid.alpha, needed_decay);
        throw config_error(msg);
    }
}

void require_in_range(cplx z, const quad::QuadratureGrid& grid, const char* op) {
    if (std::abs(z) > grid.truncation_radius + 2.0) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "%s: point (%.6g, %.6g) outside truncation radius %.6g + 2; refusing to extrapolate",
                      op, z.real(), z.imag(), grid.truncation_radius);
        throw numeric_error(msg);
    }
}

} // namespace

FockParams::FockParams(double alpha_, double p_) : alpha(alpha_), p(p_) {
    if (!(alpha > 0.0)) throw config_error("FockParams: alpha must be positive");
    if (!(p >= 1.0)) throw config_error("FockParams: p must be >= 1");
}

cplx kernel(cplx z, cplx w, double alpha) {
    if (!(alpha > 0.0)) throw config_error("kernel: alpha must be positive");
    cplx arg = alpha * w * std::conj(z);
    if (std::abs(arg) > kExpArgLimit) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "kernel: |alpha w conj(z)| = %.4g exceeds %.0f at z=(%.4g,%.4g), w=(%.4g,%.4g)",
                      std::abs(arg), kExpArgLimit, z.real(), z.imag(), w.real(), w.imag());
        throw numeric_error(msg);
    }
    return std::exp(arg);
}

cplx normalized_kernel_value(cplx z, cplx w, double alpha) {
    if (!(alpha > 0.0)) throw config_error("normalized_kernel: alpha must be positive");
    cplx arg = alpha * w * std::conj(z);
    if (std::abs(arg) > kExpArgLimit) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "normalized_kernel: |alpha w conj(z)| = %.4g exceeds %.0f",
                      std::abs(arg), kExpArgLimit);
        throw numeric_error(msg);
    }
    return std::exp(arg - 0.5 * alpha * std::norm(z));
}

PointwiseFn normalized_kernel(cplx z, double alpha) {
    if (!(alpha > 0.0)) throw config_error("normalized_kernel: alpha must be positive");
    return [z, alpha](cplx w) { return normalized_kernel_value(z, w, alpha); };
}

BasisTruncation BasisTruncation::make(double alpha, int max_degree) {
    if (!(alpha > 0.0)) throw config_error("BasisTruncation: alpha must be positive");
    if (max_degree < 0) throw config_error("BasisTruncation: max_degree must be >= 0");
    BasisTruncation b;
    b.alpha = alpha;
    b.max_degree = max_degree;
    b.normalizers.resize(max_degree + 1);
    for (int m = 0; m <= max_degree; ++m) {
        double lg = 0.5 * ((m + 1) * std::log(alpha) - std::log(M_PI) - std::lgamma(m + 1.0));
        b.normalizers[m] = std::exp(lg);
    }
    return b;
}

cplx BasisTruncation::eval(int m, cplx z) const {
    if (m < 0 || m > max_degree) throw config_error("BasisTruncation::eval: degree out of range");
    cplx v{normalizers[0], 0.0};
    for (int k = 1; k <= m; ++k) v *= z * std::sqrt(alpha / k);
    return v;
}

void BasisTruncation::eval_all(cplx z, std::vector<cplx>& out) const {
    out.resize(max_degree + 1);
    cplx v{normalizers[0], 0.0};
    out[0] = v;
    for (int k = 1; k <= max_degree; ++k) {
        v *= z * std::sqrt(alpha / k);
        out[k] = v;
    }
}

Projector::Projector(const quad::QuadratureGrid& grid, double alpha, int max_degree)
    : grid_(&grid), basis_(BasisTruncation::make(alpha, max_degree)) {
    require_plane_grid(grid, alpha, "Projector");
    const auto n = static_cast<Eigen::Index>(grid.nodes.size());
    basis_at_nodes_.resize(n, max_degree + 1);
    gauss_weight_.resize(n);
    std::vector<cplx> row;
    for (Eigen::Index i = 0; i < n; ++i) {
        basis_.eval_all(grid.nodes[i], row);
        for (int m = 0; m <= max_degree; ++m) basis_at_nodes_(i, m) = row[m];
        gauss_weight_[i] = grid.weights[i] * std::exp(-alpha * std::norm(grid.nodes[i]));
    }
}

Eigen::VectorXcd Projector::coefficients(const Eigen::VectorXcd& node_values) const {
    if (node_values.size() != basis_at_nodes_.rows())
        throw config_error("Projector::coefficients: node value count mismatch");
    return basis_at_nodes_.adjoint() * (gauss_weight_.asDiagonal() * node_values);
}

cplx Projector::evaluate(const Eigen::VectorXcd& coef, cplx w) const {
    require_in_range(w, *grid_, "Projector::evaluate");
    std::vector<cplx> row;
    basis_.eval_all(w, row);
    cplx acc{0.0, 0.0};
    for (int m = 0; m <= basis_.max_degree; ++m) acc += coef[m] * row[m];
    return acc;
}

Eigen::VectorXcd Projector::evaluate_at_nodes(const Eigen::VectorXcd& coef) const {
    return basis_at_nodes_ * coef;
}

cplx project(const PointwiseFn& fg, cplx z, const FockParams& params, const quad::QuadratureGrid& grid) {
    require_plane_grid(grid, params.alpha, "project");
    require_in_range(z, grid, "project");
    const double a = params.alpha;
    cplx acc = quad::integrate(grid, [&](cplx w) {
        cplx arg = a * z * std::conj(w);
        if (std::abs(arg) > kExpArgLimit)
            throw numeric_error("project: kernel argument out of range");
        return std::exp(arg - a * std::norm(w)) * fg(w);
    });
    return acc * (a / M_PI);
}

PointwiseFn hankel_apply(const SymbolFunction& f, PointwiseFn g, const FockParams& params,
                         const Projector& projector) {
    if (std::abs(projector.alpha() - params.alpha) > 1e-12 * params.alpha)
        throw config_error("hankel_apply: projector alpha mismatch");
    const auto& grid = projector.grid();
    const auto n = static_cast<Eigen::Index>(grid.nodes.size());
    Eigen::VectorXcd fg(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        cplx v = f(grid.nodes[i]) * g(grid.nodes[i]);
        quad::detail::check_value(v, grid.nodes[i]);
        fg[i] = v;
    }
    auto coef = std::make_shared<Eigen::VectorXcd>(projector.coefficients(fg));
    const Projector* proj = &projector;
    return [f, g = std::move(g), coef, proj](cplx w) {
        return f(w) * g(w) - proj->evaluate(*coef, w);
    };
}

double lp_norm(const PointwiseFn& g, const FockParams& params, const quad::QuadratureGrid& grid) {
    const double decay = params.alpha * params.p / 2.0;
    require_plane_grid(grid, decay, "lp_norm");
    double acc = quad::integrate(grid, [&](cplx w) {
        double m = std::abs(g(w));
        return std::pow(m, params.p) * std::exp(-decay * std::norm(w));
    });
    return std::pow(acc, 1.0 / params.p);
}

double lp_norm_nodes(const Eigen::VectorXcd& node_values, const FockParams& params,
                     const quad::QuadratureGrid& grid) {
    const double decay = params.alpha * params.p / 2.0;
    require_plane_grid(grid, decay, "lp_norm");
    if (node_values.size() != static_cast<Eigen::Index>(grid.nodes.size()))
        throw config_error("lp_norm_nodes: node value count mismatch");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < node_values.size(); ++i) {
        double m = std::abs(node_values[i]);
        quad::detail::check_value(m, grid.nodes[i]);
        acc += grid.weights[i] * std::pow(m, params.p) * std::exp(-decay * std::norm(grid.nodes[i]));
    }
    return std::pow(acc, 1.0 / params.p);
}

Lattice build_lattice(double delta, double bounding_radius, double cover_factor) {
    if (!(delta > 0.0)) throw config_error("build_lattice: delta must be positive");
    if (!(delta <= bounding_radius)) throw config_error("build_lattice: need delta <= bounding_radius");
    if (!(cover_factor >= 1.0)) throw config_error("build_lattice: cover_factor must be >= 1");

    Lattice lat;
    lat.delta = delta;
    lat.bounding_radius = bounding_radius;
    lat.cover_factor = cover_factor;
    lat.b = 0.5;

    const double rmax = bounding_radius + delta;
    const int jmax = static_cast<int>(std::floor(rmax / delta));
    std::unordered_set<long long> index_set;
    auto key = [jmax](int j, int k) {
        return static_cast<long long>(j + jmax) * (2 * jmax + 2) + (k + jmax);
    };
    for (int j = -jmax; j <= jmax; ++j) {
        for (int k = -jmax; k <= jmax; ++k) {
            cplx z{delta * j, delta * k};
            if (std::abs(z) <= rmax) {
                lat.points.push_back(z);
                index_set.insert(key(j, k));
            }
        }
    }

    // Separation: distinct index pairs differ by at least one lattice step, so the
    // minimum pairwise distance is delta and the b*delta balls (b = 1/2) are
    // pairwise disjoint. Verify over adjacent pairs rather than all O(n^2).
    double min_dist = std::numeric_limits<double>::infinity();
    for (int j = -jmax; j <= jmax; ++j) {
        for (int k = -jmax; k <= jmax; ++k) {
            if (!index_set.count(key(j, k))) continue;
            if (j + 1 <= jmax && index_set.count(key(j + 1, k))) min_dist = std::min(min_dist, delta);
            if (k + 1 <= jmax && index_set.count(key(j, k + 1))) min_dist = std::min(min_dist, delta);
        }
    }
    if (lat.points.size() > 1 && !(min_dist >= delta * (1.0 - 1e-12)))
        throw numeric_error("build_lattice: separation check failed");

    // Covering and multiplicity over an offset probe grid (offsets dodge
    // exact-distance ties against the closed-ball convention).
    const double step = delta / 4.0;
    const double ox = 0.0314159 * delta, oy = 0.0271828 * delta;
    const double cr = cover_factor * delta;
    const int window = static_cast<int>(std::ceil(cover_factor)) + 1;
    int nmax = 0;
    const int pmax = static_cast<int>(std::floor(bounding_radius / step));
    for (int a = -pmax; a <= pmax; ++a) {
        for (int b2 = -pmax; b2 <= pmax; ++b2) {
            cplx q{a * step + ox, b2 * step + oy};
            if (std::abs(q) > bounding_radius) continue;
            const int cj = static_cast<int>(std::lround(q.real() / delta));
            const int ck = static_cast<int>(std::lround(q.imag() / delta));
            int count = 0;
            double nearest = std::numeric_limits<double>::infinity();
            for (int j = cj - window; j <= cj + window; ++j) {
                for (int k = ck - window; k <= ck + window; ++k) {
                    if (std::abs(j) > jmax || std::abs(k) > jmax || !index_set.count(key(j, k))) continue;
                    double d = std::abs(q - cplx{delta * j, delta * k});
                    nearest = std::min(nearest, d);
                    if (d <= cr) ++count;
                }
            }
            if (nearest > delta) {
                char msg[160];
                std::snprintf(msg, sizeof msg,
                              "build_lattice: covering check failed at witness (%.6g, %.6g), nearest point %.6g > delta",
                              q.real(), q.imag(), nearest);
                throw numeric_error(msg);
            }
            nmax = std::max(nmax, count);
        }
    }
    lat.covering_multiplicity = nmax;
    return lat;
}

namespace {

HankelColumns hankel_columns_impl(const SymbolFunction& f, const FockParams& params,
                                  const Projector& projector,
                                  const std::vector<std::string>& labels,
                                  const std::function<cplx(std::size_t, cplx)>& input_at) {
    const auto& grid = projector.grid();
    const auto n = static_cast<Eigen::Index>(grid.nodes.size());
    const auto cols = static_cast<Eigen::Index>(labels.size());

    Eigen::VectorXcd f_nodes(n);
    for (Eigen::Index i = 0; i < n; ++i) f_nodes[i] = f(grid.nodes[i]);

    HankelColumns out;
    out.labels = labels;
    out.values.resize(n, cols);
    out.lp_norms.assign(cols, 0.0);

    parallel_for(static_cast<std::size_t>(cols), [&](std::size_t c) {
        Eigen::VectorXcd fg(n);
        for (Eigen::Index i = 0; i < n; ++i) fg[i] = f_nodes[i] * input_at(c, grid.nodes[i]);
        Eigen::VectorXcd coef = projector.coefficients(fg);
        out.values.col(static_cast<Eigen::Index>(c)) = fg - projector.evaluate_at_nodes(coef);
        out.lp_norms[c] = lp_norm_nodes(out.values.col(static_cast<Eigen::Index>(c)), params, grid);
    });
    return out;
}

} // namespace

HankelColumns hankel_basis_columns(const SymbolFunction& f, const FockParams& params,
                                   const Projector& projector, int basis_degree) {
    if (basis_degree < 0) throw config_error("hankel_basis_columns: basis_degree must be >= 0");
    if (basis_degree > projector.max_degree())
        throw config_error("hankel_basis_columns: basis_degree exceeds projector truncation");
    std::vector<std::string> labels;
    labels.reserve(basis_degree + 1);
    for (int m = 0; m <= basis_degree; ++m) labels.push_back("e_" + std::to_string(m));

    const auto& B = projector.basis();
    return hankel_columns_impl(f, params, projector, labels,
                               [&B](std::size_t m, cplx w) { return B.eval(static_cast<int>(m), w); });
}

HankelColumns hankel_kernel_columns(const SymbolFunction& f, const FockParams& params,
                                    const Projector& projector, const std::vector<cplx>& centers) {
    if (centers.empty()) throw config_error("hankel_kernel_columns: empty center family");
    std::vector<std::string> labels;
    labels.reserve(centers.size());
    for (const auto& z : centers) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "k(%.6g,%.6g)", z.real(), z.imag());
        labels.push_back(buf);
    }
    const double alpha = params.alpha;
    return hankel_columns_impl(f, params, projector, labels, [&centers, alpha](std::size_t j, cplx w) {
        return normalized_kernel_value(centers[j], w, alpha);
    });
}

int projection_degree(double alpha, double zmax, int symbol_degree) {
    double mass = alpha * zmax * zmax;
    int m = static_cast<int>(std::ceil(mass + 10.0 * std::sqrt(mass + 4.0))) + symbol_degree + 20;
    return std::max(m, 32);
}

} // namespace focklab::fock
