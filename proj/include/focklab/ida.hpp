#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "focklab/fock.hpp"
#include "focklab/quad.hpp"
#include "focklab/symbol.hpp"

namespace focklab::ida {

using focklab::cplx;

struct LocalApproxOptions {
    int degree = 8;         // polynomial truncation D for H(B(z,r))
    int radial_points = 16; // disk quadrature resolution (upsized if exactness requires)
    double irls_floor = 1e-10;
    int irls_max_iter = 200;
    double irls_rel_tol = 1e-9;
};

struct LocalFit {
    double deviation = 0.0;   // G_{p,r}(f)(z)
    Eigen::VectorXcd coef;    // approximant coefficients in ((w-z)/r)^k
    int iterations = 0;       // IRLS iterations (0 on the p = 2 path)
    std::vector<double> objective_history;
};

// inf over degree-<=D polynomials h of ((1/|B(z,r)|) integral |f-h|^p dv)^{1/p}.
// p = 2 is a weighted least-squares solve (rank-revealing, minimum-norm on
// deficiency); p != 2 runs IRLS with a residual floor.
LocalFit local_fit(const SymbolFunction& f, cplx z, double p, double r, const LocalApproxOptions& opts);
double local_deviation(const SymbolFunction& f, cplx z, double p, double r, const LocalApproxOptions& opts);

// p-mean of |f| over B(z,r).
double local_mean(const SymbolFunction& f, cplx z, double p, double r, int radial_points = 16);

enum class ProfileStatus { converged, divergent, undecided };
std::string to_string(ProfileStatus s);

// Partial sums of v_j^s * delta^2 over |z_j| <= R along a radius-doubling
// ladder, plus the convergence/divergence verdict. Shared by the IDA norm and
// the Carleson transform norms.
struct LatticeAggregate {
    double s = 1.0;
    std::vector<double> radii; // ascending
    std::vector<double> sums;  // partial sums at those radii
    double total = 0.0;
    double norm_value = 0.0;   // total^{1/s}
    ProfileStatus status = ProfileStatus::undecided;
    double last_growth = 0.0;  // S(R)/S(R/2) - 1
};

// custom_radii, when nonempty, fixes the ladder (ascending); otherwise the
// ladder is the doubling chain R_max, R_max/2, ... down to 2*delta.
LatticeAggregate aggregate_power_sums(const std::vector<cplx>& points, const std::vector<double>& values,
                                      double delta, double s,
                                      const std::vector<double>& custom_radii = {});

// G_{p,r}(f) sampled on a lattice; independent of the aggregation exponent s.
struct GField {
    double p = 2.0, r = 1.0;
    int degree = 8;
    double delta = 1.0;
    std::vector<cplx> points;
    std::vector<double> values;
};

GField compute_g_field(const SymbolFunction& f, double p, double r, const fock::Lattice& lattice,
                       const LocalApproxOptions& opts);

struct IdaProfile {
    double s = 2.0, p = 2.0, r = 1.0;
    int degree = 8;
    double delta = 1.0;
    std::vector<cplx> points;
    std::vector<double> g_values;
    LatticeAggregate aggregate;
    double norm_value = 0.0;
    ProfileStatus status = ProfileStatus::undecided;
};

IdaProfile aggregate_profile(const GField& field, double s, const std::vector<double>& custom_radii = {});
IdaProfile ida_norm(const SymbolFunction& f, double s, double p, double r, const fock::Lattice& lattice,
                    const LocalApproxOptions& opts);

struct RatioReport {
    double value1 = 0.0, value2 = 0.0, ratio = 1.0;
    bool both_zero = false;
};

// Seminorms at two ball radii and their ratio (1 by convention when both vanish).
RatioReport r_independence_check(const SymbolFunction& f, double s, double p, double r1, double r2,
                                 const fock::Lattice& lattice, const LocalApproxOptions& opts);

// CSV export: (re, im, g_value, s, partial_sum_radius, partial_sum_value);
// point rows leave the partial-sum fields empty, ladder rows the point fields.
std::string profile_to_csv(const IdaProfile& profile);

// Ordinary least squares of y against log(x): slope and its standard error.
struct SlopeFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
};
SlopeFit loglinear_slope(const std::vector<double>& radii, const std::vector<double>& sums);

} // namespace focklab::ida
