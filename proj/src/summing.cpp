#include "focklab/summing.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace focklab::summing {

KappaBranch kappa(double p, double r) {
    if (!(p >= 1.0)) throw config_error("kappa: p must be >= 1");
    if (!(r >= 1.0)) throw config_error("kappa: r must be >= 1");
    KappaBranch b;
    b.p = p;
    b.r = r;
    if (p <= 2.0) {
        b.kappa = 2.0;
        b.branch = KappaBranch::Branch::p_le_2;
        return b;
    }
    const double pprime = p / (p - 1.0);
    if (r <= pprime) {
        b.kappa = pprime;
        b.branch = KappaBranch::Branch::r_le_pprime;
    } else if (r <= p) {
        b.kappa = r;
        b.branch = KappaBranch::Branch::middle;
    } else {
        b.kappa = p;
        b.branch = KappaBranch::Branch::r_ge_p;
    }
    return b;
}

VectorSequence VectorSequence::hilbert(Eigen::MatrixXcd columns) {
    VectorSequence s;
    s.tag = SpaceTag::hilbert_truncation;
    s.vectors = std::move(columns);
    return s;
}

VectorSequence VectorSequence::lp(Eigen::MatrixXcd columns, double p, Eigen::VectorXd weights) {
    if (!(p >= 1.0)) throw config_error("VectorSequence::lp: p must be >= 1");
    if (weights.size() != columns.rows())
        throw config_error("VectorSequence::lp: weight/vector dimension mismatch");
    for (Eigen::Index i = 0; i < weights.size(); ++i)
        if (!(weights[i] > 0.0)) throw config_error("VectorSequence::lp: weights must be positive");
    VectorSequence s;
    s.tag = SpaceTag::lp_grid;
    s.space_exponent = p;
    s.weights = std::move(weights);
    s.vectors = std::move(columns);
    return s;
}

double VectorSequence::norm_of(Eigen::Index k) const {
    if (tag == SpaceTag::hilbert_truncation) return vectors.col(k).norm();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i)
        acc += weights[i] * std::pow(std::abs(vectors(i, k)), space_exponent);
    return std::pow(acc, 1.0 / space_exponent);
}

cplx VectorSequence::pair(const Eigen::VectorXcd& h, Eigen::Index k) const {
    if (h.size() != vectors.rows()) throw config_error("VectorSequence::pair: dimension mismatch");
    if (tag == SpaceTag::hilbert_truncation) return h.dot(vectors.col(k)); // conj(h) . x
    cplx acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < h.size(); ++i)
        acc += weights[i] * std::conj(h[i]) * vectors(i, k);
    return acc;
}

double VectorSequence::dual_norm(const Eigen::VectorXcd& h) const {
    if (tag == SpaceTag::hilbert_truncation) return h.norm();
    const double p = space_exponent;
    if (p == 1.0) {
        double m = 0.0;
        for (Eigen::Index i = 0; i < h.size(); ++i) m = std::max(m, std::abs(h[i]));
        return m;
    }
    const double q = p / (p - 1.0);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < h.size(); ++i) acc += weights[i] * std::pow(std::abs(h[i]), q);
    return std::pow(acc, 1.0 / q);
}

VectorSequence l2_discretization(const Eigen::MatrixXcd& node_values, const quad::QuadratureGrid& grid,
                                 double alpha) {
    if (node_values.rows() != static_cast<Eigen::Index>(grid.nodes.size()))
        throw config_error("l2_discretization: node count mismatch");
    Eigen::MatrixXcd scaled = node_values;
    for (Eigen::Index i = 0; i < scaled.rows(); ++i) {
        double w = std::sqrt(grid.weights[i] * std::exp(-alpha * std::norm(grid.nodes[i])));
        scaled.row(i) *= w;
    }
    return VectorSequence::hilbert(std::move(scaled));
}

VectorSequence lp_discretization(const Eigen::MatrixXcd& node_values, const quad::QuadratureGrid& grid,
                                 double alpha, double p) {
    if (node_values.rows() != static_cast<Eigen::Index>(grid.nodes.size()))
        throw config_error("lp_discretization: node count mismatch");
    Eigen::VectorXd w(node_values.rows());
    for (Eigen::Index i = 0; i < w.size(); ++i)
        w[i] = grid.weights[i] * std::exp(-alpha * p / 2.0 * std::norm(grid.nodes[i]));
    return VectorSequence::lp(node_values, p, std::move(w));
}

double strong_norm(const VectorSequence& seq, double q) {
    if (!(q >= 1.0)) throw config_error("strong_norm: q must be >= 1");
    double acc = 0.0;
    for (Eigen::Index k = 0; k < seq.count(); ++k) acc += std::pow(seq.norm_of(k), q);
    return std::pow(acc, 1.0 / q);
}

namespace {

double weak_objective_impl(const VectorSequence& seq, double p_sum, const Eigen::VectorXcd& h) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < seq.count(); ++k) acc += std::pow(std::abs(seq.pair(h, k)), p_sum);
    return acc;
}

// Scale (or clip, for the sup-norm ball) back onto the dual unit ball.
void project_dual_ball(const VectorSequence& seq, Eigen::VectorXcd& h) {
    if (seq.tag == SpaceTag::lp_grid && seq.space_exponent == 1.0) {
        for (Eigen::Index i = 0; i < h.size(); ++i) {
            double m = std::abs(h[i]);
            if (m > 1.0) h[i] /= m;
        }
        return;
    }
    double n = seq.dual_norm(h);
    if (n > 1.0) h /= n;
}

Eigen::VectorXcd weak_gradient(const VectorSequence& seq, double p_sum, const Eigen::VectorXcd& h) {
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(h.size());
    for (Eigen::Index k = 0; k < seq.count(); ++k) {
        cplx phi = seq.pair(h, k);
        double m = std::abs(phi);
        if (m < 1e-300) continue;
        double scale = std::pow(m, p_sum - 2.0);
        cplx factor = scale * std::conj(phi);
        if (seq.tag == SpaceTag::hilbert_truncation) {
            g += factor * seq.vectors.col(k);
        } else {
            for (Eigen::Index i = 0; i < h.size(); ++i)
                g[i] += factor * seq.weights[i] * seq.vectors(i, k);
        }
    }
    return g;
}

// Dual-norming functional of a single target vector under the space pairing.
Eigen::VectorXcd norming_functional(const VectorSequence& seq, const Eigen::VectorXcd& x) {
    Eigen::VectorXcd h(x.size());
    if (seq.tag == SpaceTag::hilbert_truncation) {
        double n = x.norm();
        h = n > 0.0 ? Eigen::VectorXcd(x / n) : Eigen::VectorXcd::Zero(x.size());
        return h;
    }
    const double p = seq.space_exponent;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double m = std::abs(x[i]);
        h[i] = m > 0.0 ? cplx(x[i] / m) * std::pow(m, p - 1.0) : cplx{0.0, 0.0};
    }
    double n = seq.dual_norm(h);
    if (n > 0.0) h /= n;
    return h;
}

} // namespace

double weak_objective(const VectorSequence& seq, double p_sum, const Eigen::VectorXcd& witness) {
    if (!(p_sum >= 1.0)) throw config_error("weak_objective: p must be >= 1");
    return std::pow(weak_objective_impl(seq, p_sum, witness), 1.0 / p_sum);
}

WeakNormResult weak_norm(const VectorSequence& seq, double p_sum, std::uint64_t seed, int restarts,
                         int max_iter) {
    if (!(p_sum >= 1.0)) throw config_error("weak_norm: p must be >= 1");
    WeakNormResult out;
    if (seq.count() == 0) {
        out.witness = Eigen::VectorXcd::Zero(seq.dimension());
        out.exact = true;
        return out;
    }

    if (seq.tag == SpaceTag::hilbert_truncation && p_sum == 2.0) {
        // sup_h (sum |<h,x_k>|^2)^{1/2} = largest singular value of [x_1 ... x_n]
        Eigen::MatrixXcd gram = seq.vectors.adjoint() * seq.vectors;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
        Eigen::Index which = 0;
        es.eigenvalues().maxCoeff(&which);
        out.value = std::sqrt(std::max(0.0, es.eigenvalues()[which]));
        Eigen::VectorXcd v = seq.vectors * es.eigenvectors().col(which);
        double n = v.norm();
        out.witness = n > 0.0 ? Eigen::VectorXcd(v / n) : Eigen::VectorXcd::Zero(seq.dimension());
        out.exact = true;
        return out;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = 0.0;
    Eigen::VectorXcd best_h = Eigen::VectorXcd::Zero(seq.dimension());

    for (int restart = 0; restart < restarts + 2; ++restart) {
        Eigen::VectorXcd h(seq.dimension());
        if (restart == 0) {
            // norming functional of the largest column
            Eigen::Index kbest = 0;
            double nbest = -1.0;
            for (Eigen::Index k = 0; k < seq.count(); ++k) {
                double n = seq.norm_of(k);
                if (n > nbest) { nbest = n; kbest = k; }
            }
            h = norming_functional(seq, seq.vectors.col(kbest));
        } else if (restart == 1) {
            h = norming_functional(seq, seq.vectors.rowwise().sum());
        } else {
            for (Eigen::Index i = 0; i < h.size(); ++i) h[i] = cplx{gauss(rng), gauss(rng)};
        }
        project_dual_ball(seq, h);
        if (h.norm() == 0.0) continue;

        double obj = weak_objective_impl(seq, p_sum, h);
        double step = 0.5;
        for (int it = 0; it < max_iter; ++it) {
            Eigen::VectorXcd g = weak_gradient(seq, p_sum, h);
            double gn = g.norm();
            if (gn < 1e-300) break;
            bool improved = false;
            for (int half = 0; half < 12; ++half) {
                Eigen::VectorXcd h_try = h + (step / gn) * g;
                project_dual_ball(seq, h_try);
                double obj_try = weak_objective_impl(seq, p_sum, h_try);
                if (obj_try > obj) {
                    double gain = obj_try - obj;
                    h = std::move(h_try);
                    obj = obj_try;
                    improved = true;
                    step *= 1.3;
                    if (gain <= 1e-12 * std::max(obj, 1e-300)) it = max_iter;
                    break;
                }
                step *= 0.5;
            }
            if (!improved) break;
        }
        if (obj > best) {
            best = obj;
            best_h = h;
        }
    }
    out.value = std::pow(best, 1.0 / p_sum);
    out.witness = best_h;
    out.exact = false;
    return out;
}

double pi2_hilbert_schmidt(const VectorSequence& columns) {
    if (columns.tag != SpaceTag::hilbert_truncation)
        throw config_error("pi2_hilbert_schmidt: hilbert_truncation sequence required");
    double acc = 0.0;
    for (Eigen::Index k = 0; k < columns.count(); ++k) {
        double n = columns.norm_of(k);
        acc += n * n;
    }
    return std::sqrt(acc);
}

RademacherDraw RademacherDraw::make(std::uint64_t seed, int draws, int m) {
    if (draws < 1 || m < 1) throw config_error("RademacherDraw: need draws >= 1 and m >= 1");
    RademacherDraw d;
    d.seed = seed;
    d.draws = draws;
    d.m = m;
    d.signs.resize(static_cast<std::size_t>(draws) * m);
    std::mt19937_64 rng(seed);
    for (auto& s : d.signs) s = (rng() & 1u) ? 1 : -1;
    return d;
}

double khintchine_ratio(const std::vector<cplx>& c, double p) {
    if (c.empty()) throw config_error("khintchine_ratio: need at least one coefficient");
    if (!(p > 0.0)) throw config_error("khintchine_ratio: p must be positive");
    const int m = static_cast<int>(c.size());
    if (m > 20)
        throw config_error("khintchine_ratio: exact enumeration supports m <= 20; use the Monte Carlo variant");

    double l2 = 0.0;
    for (const auto& v : c) l2 += std::norm(v);
    l2 = std::sqrt(l2);
    if (l2 == 0.0) throw config_error("khintchine_ratio: zero coefficient vector");

    // enumerate half the sign patterns; global sign flip preserves |sum|
    const std::uint64_t half = 1ull << (m - 1);
    double acc = 0.0;
    for (std::uint64_t mask = 0; mask < half; ++mask) {
        cplx sum = c[0]; // first sign fixed +1
        for (int j = 1; j < m; ++j) sum += ((mask >> (j - 1)) & 1u) ? -c[j] : c[j];
        acc += std::pow(std::abs(sum), p);
    }
    double mean = acc / static_cast<double>(half);
    return std::pow(mean, 1.0 / p) / l2;
}

McEstimate khintchine_ratio_mc(const std::vector<cplx>& c, double p, const RademacherDraw& draw) {
    if (c.size() != static_cast<std::size_t>(draw.m))
        throw config_error("khintchine_ratio_mc: coefficient/draw size mismatch");
    if (!(p > 0.0)) throw config_error("khintchine_ratio_mc: p must be positive");
    double l2 = 0.0;
    for (const auto& v : c) l2 += std::norm(v);
    l2 = std::sqrt(l2);
    if (l2 == 0.0) throw config_error("khintchine_ratio_mc: zero coefficient vector");

    double acc = 0.0, acc2 = 0.0;
    for (int t = 0; t < draw.draws; ++t) {
        cplx sum{0.0, 0.0};
        for (int j = 0; j < draw.m; ++j) sum += static_cast<double>(draw.sign(t, j)) * c[j];
        double v = std::pow(std::abs(sum), p);
        acc += v;
        acc2 += v * v;
    }
    McEstimate est;
    est.mean_pow = acc / draw.draws;
    double var = std::max(0.0, acc2 / draw.draws - est.mean_pow * est.mean_pow);
    est.stderr_pow = std::sqrt(var / draw.draws);
    est.ratio = std::pow(est.mean_pow, 1.0 / p) / l2;
    return est;
}

PiEstimate pi_r_lower_bound(const VectorSequence& hankel_columns, double input_family_weak_norm,
                            double r) {
    if (!(r >= 1.0)) throw config_error("pi_r_lower_bound: r must be >= 1");
    if (!(input_family_weak_norm > 0.0))
        throw config_error("pi_r_lower_bound: zero weak norm rejected");
    PiEstimate est;
    est.strong = strong_norm(hankel_columns, r);
    est.weak = input_family_weak_norm;
    est.value = est.strong / est.weak;
    est.tag = "lower_bound";
    return est;
}

double kernel_family_weak_bound(std::size_t family_size, double delta, double alpha, double p_space,
                                double r_sum) {
    if (!(p_space > 1.0))
        throw config_error("kernel_family_weak_bound: requires p > 1 (use the Rademacher path at p = 1)");
    if (!(delta > 0.0) || !(alpha > 0.0) || !(r_sum >= 1.0) || family_size == 0)
        throw config_error("kernel_family_weak_bound: bad parameters");
    const double q = p_space / (p_space - 1.0);
    // subharmonic mean over disjoint delta/2 balls + Young with the alpha/4 Gaussian
    double base = (4.0 * M_PI / alpha) *
                  std::pow(4.0 * std::exp(q * alpha * delta * delta / 8.0) / (M_PI * delta * delta), 1.0 / q);
    if (r_sum >= q) return base;
    return base * std::pow(static_cast<double>(family_size), 1.0 / r_sum - 1.0 / q);
}

double kernel_family_weak2_exact(const std::vector<cplx>& points, double alpha) {
    if (points.empty()) throw config_error("kernel_family_weak2_exact: empty family");
    const auto m = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd gram(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            cplx zi = points[i], zj = points[j];
            cplx e = alpha * zj * std::conj(zi) -
                     0.5 * alpha * cplx{std::norm(zi) + std::norm(zj), 0.0};
            gram(i, j) = (M_PI / alpha) * std::exp(e);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

fock::PointwiseFn rademacher_test_function(const std::vector<cplx>& c, const std::vector<int>& signs,
                                           const std::vector<cplx>& points, double alpha) {
    if (c.size() != signs.size() || c.size() != points.size())
        throw config_error("rademacher_test_function: length mismatch");
    for (int s : signs)
        if (s != 1 && s != -1) throw config_error("rademacher_test_function: signs must be +-1");
    return [c, signs, points, alpha](cplx w) {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < c.size(); ++j)
            acc += c[j] * static_cast<double>(signs[j]) * fock::normalized_kernel_value(points[j], w, alpha);
        return acc;
    };
}

} // namespace focklab::summing
