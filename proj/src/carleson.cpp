#include "focklab/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "focklab/parallel.hpp"
#include "focklab/quad.hpp"

namespace focklab::carleson {

MeasureSample MeasureSample::density(SymbolFunction g, double exponent, double support_radius) {
    if (!(exponent > 0.0)) throw config_error("MeasureSample::density: exponent must be positive");
    if (!(support_radius > 0.0)) throw config_error("MeasureSample::density: support radius must be positive");
    MeasureSample m;
    m.kind = Kind::density;
    m.density_symbol = std::move(g);
    m.exponent = exponent;
    m.support_radius = support_radius;
    return m;
}

MeasureSample MeasureSample::atoms(std::vector<std::pair<cplx, double>> atom_list) {
    for (const auto& [z, mass] : atom_list) {
        if (!(mass > 0.0)) throw config_error("MeasureSample::atoms: masses must be positive");
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw config_error("MeasureSample::atoms: atom positions must be finite");
    }
    MeasureSample m;
    m.kind = Kind::atoms;
    m.atom_list = std::move(atom_list);
    return m;
}

MeasureSample MeasureSample::atoms_from_csv(std::istream& in) {
    std::vector<std::pair<cplx, double>> atoms;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double re, im, mass;
        if (!(row >> re >> im >> mass))
            throw config_error("atoms_from_csv: expected 're,im,mass' row, got '" + line + "'");
        atoms.emplace_back(cplx{re, im}, mass);
    }
    if (atoms.empty()) throw config_error("atoms_from_csv: no atoms found");
    return MeasureSample::atoms(std::move(atoms));
}

bool MeasureSample::is_zero() const {
    if (kind == Kind::atoms) return atom_list.empty();
    return density_symbol.is_zero();
}

double MeasureSample::density_at(cplx w) const {
    if (kind != Kind::density) throw config_error("density_at: not a density measure");
    if (std::abs(w) > support_radius) return 0.0;
    return std::pow(std::abs(density_symbol(w)), exponent);
}

double averaged_function(const MeasureSample& mu, cplx z, double radius, int disk_points) {
    if (!(radius > 0.0)) throw config_error("averaged_function: radius must be positive");
    const double area = M_PI * radius * radius;
    if (mu.kind == MeasureSample::Kind::atoms) {
        double acc = 0.0;
        for (const auto& [a, mass] : mu.atom_list)
            if (std::abs(a - z) <= radius) acc += mass; // closed-ball convention
        return acc / area;
    }
    int pts = std::max(disk_points, mu.density_symbol.max_total_degree() / 2 + 4);
    auto grid = quad::build_disk_grid(z, radius, pts);
    double acc = quad::integrate(grid, [&](cplx w) { return mu.density_at(w); });
    return acc / area;
}

double berezin_transform(const MeasureSample& mu, double t, double alpha, cplx z,
                         const quad::QuadratureGrid* plane) {
    if (!(t > 0.0)) throw config_error("berezin_transform: t must be positive");
    if (!(alpha > 0.0)) throw config_error("berezin_transform: alpha must be positive");
    const double decay = alpha * t / 2.0;
    if (mu.kind == MeasureSample::Kind::atoms) {
        double acc = 0.0;
        for (const auto& [a, mass] : mu.atom_list) acc += mass * std::exp(-decay * std::norm(a - z));
        return acc;
    }
    if (plane == nullptr || plane->kind != quad::GridKind::plane)
        throw config_error("berezin_transform: density measures need a plane grid");
    // Coverage: either the support is inside the grid or the Gaussian tail
    // around z is inside it.
    const bool covered = (std::isfinite(mu.support_radius) && mu.support_radius <= plane->truncation_radius) ||
                         (std::abs(z) + quad::gauss_tail_radius(decay, plane->tolerance) <= plane->truncation_radius);
    if (!covered)
        throw config_error("berezin_transform: plane grid does not cover the transform at this point");
    return quad::integrate(*plane, [&](cplx w) {
        return std::exp(-decay * std::norm(w - z)) * mu.density_at(w);
    });
}

TransformCheck transform_equivalence_check(const MeasureSample& mu, double kappa_over_p, double t,
                                           double alpha, const fock::Lattice& lattice,
                                           const quad::QuadratureGrid* plane) {
    if (!(kappa_over_p >= 1.0))
        throw config_error("transform_equivalence_check: only the kappa/p >= 1 path is implemented");
    const std::size_t n = lattice.points.size();
    std::vector<double> avg(n, 0.0), ber(n, 0.0);
    parallel_for(n, [&](std::size_t j) {
        avg[j] = averaged_function(mu, lattice.points[j]);
        ber[j] = berezin_transform(mu, t, alpha, lattice.points[j], plane);
    });
    auto agg_avg = ida::aggregate_power_sums(lattice.points, avg, lattice.delta, kappa_over_p);
    auto agg_ber = ida::aggregate_power_sums(lattice.points, ber, lattice.delta, kappa_over_p);

    TransformCheck out;
    out.norm_avg = agg_avg.norm_value;
    out.norm_berezin = agg_ber.norm_value;
    out.status_avg = agg_avg.status;
    out.status_berezin = agg_ber.status;
    if (out.norm_avg < 1e-12 && out.norm_berezin < 1e-12) {
        out.both_zero = true;
        out.ratio = 1.0;
    } else if (out.norm_berezin == 0.0) {
        out.ratio = std::numeric_limits<double>::infinity();
    } else {
        out.ratio = out.norm_avg / out.norm_berezin;
    }
    return out;
}

summing::PiEstimate embedding_lower_bound(const MeasureSample& mu, double p, double r, double alpha,
                                          const fock::Lattice& lattice,
                                          const quad::QuadratureGrid* plane) {
    if (!(p >= 1.0) || !(r >= 1.0)) throw config_error("embedding_lower_bound: need p, r >= 1");
    const std::size_t n = lattice.points.size();
    std::vector<double> col(n, 0.0); // ||Id k_z||_{L^p(d mu)} = Berezin at t = p, to the 1/p
    parallel_for(n, [&](std::size_t j) {
        col[j] = std::pow(berezin_transform(mu, p, alpha, lattice.points[j], plane), 1.0 / p);
    });
    double strong = 0.0;
    for (double v : col) strong += std::pow(v, r);
    strong = std::pow(strong, 1.0 / r);

    double weak = (p == 2.0) ? summing::kernel_family_weak2_exact(lattice.points, alpha)
                             : summing::kernel_family_weak_bound(n, lattice.delta, alpha, p, r);

    summing::PiEstimate est;
    est.strong = strong;
    est.weak = weak;
    est.value = strong / weak;
    est.tag = "lower_bound";
    return est;
}

summing::PiEstimate embedding_lower_bound_rademacher(const MeasureSample& mu, double alpha,
                                                     const std::vector<cplx>& points,
                                                     const std::vector<cplx>& coefficients,
                                                     const quad::QuadratureGrid* plane) {
    if (points.empty() || points.size() != coefficients.size())
        throw config_error("embedding_lower_bound_rademacher: point/coefficient mismatch");
    const int m = static_cast<int>(points.size());
    const int cap = mu.kind == MeasureSample::Kind::atoms ? 20 : 12;
    if (m > cap)
        throw config_error("embedding_lower_bound_rademacher: family too large for exact enumeration");

    double l2 = 0.0;
    for (const auto& c : coefficients) l2 += std::norm(c);
    l2 = std::sqrt(l2);
    if (l2 == 0.0) throw config_error("embedding_lower_bound_rademacher: zero coefficients");

    std::vector<int> signs(m, 1);
    const std::uint64_t half = 1ull << (m > 1 ? m - 1 : 0);
    double acc = 0.0;
    for (std::uint64_t mask = 0; mask < half; ++mask) {
        for (int j = 1; j < m; ++j) signs[j] = ((mask >> (j - 1)) & 1u) ? -1 : 1;
        auto g = summing::rademacher_test_function(coefficients, signs, points, alpha);
        double norm1;
        if (mu.kind == MeasureSample::Kind::atoms) {
            norm1 = 0.0;
            for (const auto& [a, mass] : mu.atom_list)
                norm1 += mass * std::abs(g(a)) * std::exp(-0.5 * alpha * std::norm(a));
        } else {
            if (plane == nullptr)
                throw config_error("embedding_lower_bound_rademacher: density measures need a plane grid");
            norm1 = quad::integrate(*plane, [&](cplx w) {
                return std::abs(g(w)) * std::exp(-0.5 * alpha * std::norm(w)) * mu.density_at(w);
            });
        }
        acc += norm1;
    }
    const double mean = acc / static_cast<double>(half);
    // E_t |<h, g_t>| <= (2 pi / alpha) ||c||_2 over the sup-norm dual ball,
    // by Cauchy-Schwarz on the sign average; certified weak-1 bound.
    const double weak = (2.0 * M_PI / alpha) * l2;

    summing::PiEstimate est;
    est.strong = mean;
    est.weak = weak;
    est.value = mean / weak;
    est.tag = "lower_bound";
    return est;
}

double embedding_pi2_surrogate(const MeasureSample& mu, double alpha, int basis_degree,
                               const quad::QuadratureGrid* plane) {
    if (basis_degree < 0) throw config_error("embedding_pi2_surrogate: basis_degree must be >= 0");
    auto basis = fock::BasisTruncation::make(alpha, basis_degree);
    std::vector<cplx> vals;
    auto basis_mass = [&](cplx w) {
        basis.eval_all(w, vals);
        double acc = 0.0;
        for (const auto& v : vals) acc += std::norm(v);
        return acc * std::exp(-alpha * std::norm(w));
    };
    double acc = 0.0;
    if (mu.kind == MeasureSample::Kind::atoms) {
        for (const auto& [a, mass] : mu.atom_list) acc += mass * basis_mass(a);
    } else {
        if (plane == nullptr)
            throw config_error("embedding_pi2_surrogate: density measures need a plane grid");
        acc = quad::integrate(*plane, [&](cplx w) { return basis_mass(w) * mu.density_at(w); });
    }
    return std::sqrt(std::max(0.0, acc));
}

} // namespace focklab::carleson
