#pragma once

#include <istream>
#include <limits>
#include <utility>
#include <vector>

#include "focklab/fock.hpp"
#include "focklab/ida.hpp"
#include "focklab/summing.hpp"
#include "focklab/symbol.hpp"

namespace focklab::carleson {

using focklab::cplx;

// Positive Borel measure at desk scale: either a density d(mu) = |g|^e dv
// (optionally truncated to a disk) or a finite atom list.
struct MeasureSample {
    enum class Kind { density, atoms };
    Kind kind = Kind::density;

    SymbolFunction density_symbol;
    double exponent = 1.0;
    double support_radius = std::numeric_limits<double>::infinity();

    std::vector<std::pair<cplx, double>> atom_list;

    static MeasureSample density(SymbolFunction g, double exponent,
                                 double support_radius = std::numeric_limits<double>::infinity());
    static MeasureSample atoms(std::vector<std::pair<cplx, double>> atom_list);
    // CSV rows re,im,mass ('#' comments and blank lines ignored)
    static MeasureSample atoms_from_csv(std::istream& in);

    bool is_zero() const;
    double density_at(cplx w) const; // |g(w)|^e, zero outside the support radius
};

// mu(B(z, radius)) / (pi radius^2); atoms on the boundary count as inside.
double averaged_function(const MeasureSample& mu, cplx z, double radius = 1.0, int disk_points = 24);

// integral of |k_z(w)|^t e^{-alpha t |w|^2/2} d(mu)(w) = integral of
// e^{-alpha t |w-z|^2/2} d(mu)(w). Densities need a plane grid whose reach
// covers z plus the Gaussian tail.
double berezin_transform(const MeasureSample& mu, double t, double alpha, cplx z,
                         const quad::QuadratureGrid* plane = nullptr);

struct TransformCheck {
    double norm_avg = 0.0;     // lattice L^{kappa/p} norm of mu-hat
    double norm_berezin = 0.0; // same for the t-Berezin transform
    double ratio = 1.0;
    bool both_zero = false;
    ida::ProfileStatus status_avg = ida::ProfileStatus::undecided;
    ida::ProfileStatus status_berezin = ida::ProfileStatus::undecided;
};

TransformCheck transform_equivalence_check(const MeasureSample& mu, double kappa_over_p, double t,
                                           double alpha, const fock::Lattice& lattice,
                                           const quad::QuadratureGrid* plane = nullptr);

// Definitional lower bound for pi_r(Id: F^p_alpha -> L^p_alpha(d mu)) from the
// kernel family at the lattice points: ||Id k_z||_{L^p(d mu)} = Berezin at t=p.
summing::PiEstimate embedding_lower_bound(const MeasureSample& mu, double p, double r, double alpha,
                                          const fock::Lattice& lattice,
                                          const quad::QuadratureGrid* plane = nullptr);

// p = 1 path mirroring the Pietsch/Rademacher construction: the averaged
// quotient E_t ||Id g_t||_{L^1(d mu)} / ((2 pi / alpha) ||c||_2), enumerated
// exactly over sign patterns.
summing::PiEstimate embedding_lower_bound_rademacher(const MeasureSample& mu, double alpha,
                                                     const std::vector<cplx>& points,
                                                     const std::vector<cplx>& coefficients,
                                                     const quad::QuadratureGrid* plane = nullptr);

// pi_2 surrogate for the embedding: Hilbert-Schmidt norm of Id on the basis
// truncation, (sum_m ||e_m||^2_{L^2_alpha(d mu)})^{1/2}.
double embedding_pi2_surrogate(const MeasureSample& mu, double alpha, int basis_degree,
                               const quad::QuadratureGrid* plane = nullptr);

} // namespace focklab::carleson
