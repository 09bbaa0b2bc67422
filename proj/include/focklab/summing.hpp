#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "focklab/fock.hpp"
#include "focklab/quad.hpp"

namespace focklab::summing {

using focklab::cplx;

// The exponent kappa(p, r) selecting which IDA space matches r-summing Hankel
// operators on F^p_alpha.
struct KappaBranch {
    double p = 2.0, r = 2.0;
    double kappa = 2.0;
    enum class Branch { p_le_2, r_le_pprime, middle, r_ge_p } branch = Branch::p_le_2;
};

KappaBranch kappa(double p, double r);

enum class SpaceTag { hilbert_truncation, lp_grid };

// Finite vector family in a concrete finite-dimensional normed space: plain
// Euclidean coordinates (hilbert_truncation) or a weighted-p-norm grid
// discretization of L^p_alpha (lp_grid). Columns are the family members.
struct VectorSequence {
    SpaceTag tag = SpaceTag::hilbert_truncation;
    double space_exponent = 2.0; // lp_grid only
    Eigen::VectorXd weights;     // lp_grid only, strictly positive
    Eigen::MatrixXcd vectors;

    static VectorSequence hilbert(Eigen::MatrixXcd columns);
    static VectorSequence lp(Eigen::MatrixXcd columns, double p, Eigen::VectorXd weights);

    Eigen::Index count() const { return vectors.cols(); }
    Eigen::Index dimension() const { return vectors.rows(); }
    double norm_of(Eigen::Index k) const;
    // pairing <h, x_k> of a dual-side vector against column k
    cplx pair(const Eigen::VectorXcd& h, Eigen::Index k) const;
    double dual_norm(const Eigen::VectorXcd& h) const;
};

// L^2_alpha / L^p_alpha discretizations of grid-sampled functions; the weights
// absorb the Gaussian so the hilbert tag is genuinely Euclidean.
VectorSequence l2_discretization(const Eigen::MatrixXcd& node_values, const quad::QuadratureGrid& grid,
                                 double alpha);
VectorSequence lp_discretization(const Eigen::MatrixXcd& node_values, const quad::QuadratureGrid& grid,
                                 double alpha, double p);

double strong_norm(const VectorSequence& seq, double q);

struct WeakNormResult {
    double value = 0.0;
    Eigen::VectorXcd witness;
    bool exact = false; // true only on the hilbert p=2 singular-value path
};

// sup over the unit dual ball of (sum_k |<x*, x_k>|^p)^{1/p}. Exact via the
// largest singular value for hilbert sequences at p = 2; otherwise a
// projected-gradient ascent estimate with seeded restarts (a lower estimate,
// reported with its witness functional).
WeakNormResult weak_norm(const VectorSequence& seq, double p_sum, std::uint64_t seed = 20240601u,
                         int restarts = 20, int max_iter = 200);

// (sum_k |<witness, x_k>|^p)^{1/p} for a given functional; used to compare
// estimates across exponents on a common witness set.
double weak_objective(const VectorSequence& seq, double p_sum, const Eigen::VectorXcd& witness);

// pi_2 of an operator between Hilbert truncations equals its Hilbert-Schmidt
// norm; columns must be the images of an orthonormal family.
double pi2_hilbert_schmidt(const VectorSequence& columns);

struct RademacherDraw {
    std::uint64_t seed = 0;
    int draws = 0;
    int m = 0;
    std::vector<signed char> signs; // draws x m, entries +-1

    static RademacherDraw make(std::uint64_t seed, int draws, int m);
    int sign(int draw, int j) const { return signs[static_cast<std::size_t>(draw) * m + j]; }
};

// (E_t |sum c_j gamma_j(t)|^p)^{1/p} / ||c||_2, by exact enumeration (m <= 20).
double khintchine_ratio(const std::vector<cplx>& c, double p);

struct McEstimate {
    double ratio = 0.0;
    double mean_pow = 0.0;   // E|sum|^p estimate
    double stderr_pow = 0.0; // standard error of mean_pow
};
McEstimate khintchine_ratio_mc(const std::vector<cplx>& c, double p, const RademacherDraw& draw);

struct PiEstimate {
    double value = 0.0;
    double strong = 0.0;
    double weak = 0.0;
    const char* tag = "lower_bound"; // {exact, lower_bound, surrogate}
};

// strong_r(columns) / weak-norm upper bound of the input family: a true lower
// bound for pi_r by definition.
PiEstimate pi_r_lower_bound(const VectorSequence& hankel_columns, double input_family_weak_norm,
                            double r);

// Certified upper bound for the weak-r norm of a kernel family {k_{z_j}} at
// delta-separated points, over the dual ball of the L^p discretization
// (subharmonic mean + Young's inequality; requires p_space > 1).
double kernel_family_weak_bound(std::size_t family_size, double delta, double alpha, double p_space,
                                double r_sum);

// Exact weak-2 norm of a kernel family over the L^2 dual ball: largest
// eigenvalue of the closed-form Gram matrix <k_{z_i}, k_{z_j}>.
double kernel_family_weak2_exact(const std::vector<cplx>& points, double alpha);

// g(w) = sum_j c_j signs_j k_{z_j}(w), the random test function of the lower
// bound constructions.
fock::PointwiseFn rademacher_test_function(const std::vector<cplx>& c, const std::vector<int>& signs,
                                           const std::vector<cplx>& points, double alpha);

} // namespace focklab::summing
