#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "focklab/quad.hpp"
#include "focklab/symbol.hpp"

namespace focklab::fock {

using focklab::cplx;
using PointwiseFn = std::function<cplx(cplx)>;

struct FockParams {
    double alpha = 1.0;
    double p = 2.0;
    FockParams() = default;
    FockParams(double alpha_, double p_);
};

// Bergman kernel K(w, z) = e^{alpha <w,z>} with <w,z> = w conj(z) in dimension 1.
// Arguments with |alpha w conj(z)| > 700 are refused.
cplx kernel(cplx z, cplx w, double alpha);

// k_z(w) = e^{alpha w conj(z) - alpha|z|^2/2}.
cplx normalized_kernel_value(cplx z, cplx w, double alpha);
PointwiseFn normalized_kernel(cplx z, double alpha);

// Orthonormal monomial basis e_m(z) = c_m z^m of F^2_alpha, c_m = (alpha^{m+1}/(pi m!))^{1/2}.
struct BasisTruncation {
    double alpha = 1.0;
    int max_degree = 0;
    std::vector<double> normalizers;

    static BasisTruncation make(double alpha, int max_degree);
    // Stable evaluation by recurrence e_m = e_{m-1} z sqrt(alpha/m).
    cplx eval(int m, cplx z) const;
    void eval_all(cplx z, std::vector<cplx>& out) const;
};

// The projection P restricted to span{e_0..e_M}, discretized on a plane grid.
// Agreement with the direct kernel-quadrature projection is a tested invariant
// (the kernel is the sum of e_m(w) conj(e_m(z)) up to the truncation tail).
class Projector {
public:
    Projector(const quad::QuadratureGrid& grid, double alpha, int max_degree);

    int max_degree() const { return basis_.max_degree; }
    double alpha() const { return basis_.alpha; }
    const quad::QuadratureGrid& grid() const { return *grid_; }
    const BasisTruncation& basis() const { return basis_; }
    const Eigen::MatrixXcd& basis_at_nodes() const { return basis_at_nodes_; }

    // coefficients of P(g) in {e_m}: integral of g conj(e_m) e^{-alpha|w|^2} dv
    Eigen::VectorXcd coefficients(const Eigen::VectorXcd& node_values) const;
    cplx evaluate(const Eigen::VectorXcd& coef, cplx w) const;
    Eigen::VectorXcd evaluate_at_nodes(const Eigen::VectorXcd& coef) const;

private:
    const quad::QuadratureGrid* grid_;
    BasisTruncation basis_;
    Eigen::MatrixXcd basis_at_nodes_; // N x (M+1)
    Eigen::VectorXd gauss_weight_;    // w_i e^{-alpha|z_i|^2}
};

// P(fg)(z) by direct kernel quadrature: (alpha/pi) * integral of
// e^{alpha z conj(w)} fg(w) e^{-alpha|w|^2} dv(w). The alpha/pi normalization
// makes P reproduce holomorphic functions.
cplx project(const PointwiseFn& fg, cplx z, const FockParams& params, const quad::QuadratureGrid& grid);

// H_f g = f g - P(fg), with P realized through the projector.
PointwiseFn hankel_apply(const SymbolFunction& f, PointwiseFn g, const FockParams& params,
                         const Projector& projector);

// (integral of |g|^p e^{-alpha p |z|^2 / 2} dv)^{1/p} on a plane grid whose
// design decay does not exceed alpha p / 2.
double lp_norm(const PointwiseFn& g, const FockParams& params, const quad::QuadratureGrid& grid);
double lp_norm_nodes(const Eigen::VectorXcd& node_values, const FockParams& params,
                     const quad::QuadratureGrid& grid);

// Square delta-lattice delta(Z + iZ) clipped to |z| <= bounding_radius + delta,
// with verified separation (b = 1/2), covering, and covering multiplicity N for
// balls of radius cover_factor * delta.
struct Lattice {
    double delta = 1.0;
    double bounding_radius = 1.0;
    double cover_factor = 1.0;
    double b = 0.5;
    int covering_multiplicity = 0;
    std::vector<cplx> points;
};

Lattice build_lattice(double delta, double bounding_radius, double cover_factor = 1.0);

// Hankel images of a family of inputs, sampled on the projector's grid.
struct HankelColumns {
    std::vector<std::string> labels;
    Eigen::MatrixXcd values; // one column per input
    std::vector<double> lp_norms;
};

HankelColumns hankel_basis_columns(const SymbolFunction& f, const FockParams& params,
                                   const Projector& projector, int basis_degree);
HankelColumns hankel_kernel_columns(const SymbolFunction& f, const FockParams& params,
                                    const Projector& projector, const std::vector<cplx>& centers);

// Projection truncation degree covering kernels at |z| <= zmax plus a symbol of
// the given degree, with a safety margin.
int projection_degree(double alpha, double zmax, int symbol_degree);

} // namespace focklab::fock
