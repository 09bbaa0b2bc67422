#include "focklab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "focklab/parallel.hpp"
#include "focklab/version.hpp"

namespace focklab::experiments {

using focklab::report::fmt;

nlohmann::ordered_json Config::echo(const std::string& cmd) const {
    nlohmann::ordered_json j;
    j["cmd"] = cmd;
    j["version"] = kVersion;
    j["catalog"] = kCatalogVersion;
    j["alpha"] = alpha;
    j["p"] = p;
    j["r"] = r;
    if (s) j["s"] = *s;
    else j["s"] = nullptr;
    j["delta"] = delta;
    j["radius"] = radius;
    j["basis_degree"] = basis_degree;
    j["ida_degree"] = ida_degree;
    j["grid_points"] = grid_points;
    j["tail_tolerance"] = tail_tolerance;
    j["symbol"] = symbol;
    j["measure"] = measure;
    j["t_values"] = t_values;
    j["seed"] = seed;
    return j;
}

const std::vector<CatalogEntry>& symbol_catalog() {
    static const std::vector<CatalogEntry> catalog = {
        {"zb_gauss_quarter", "1 * zb^1 * gauss(0.25)"},
        {"zb_gauss_half", "1 * zb^1 * gauss(0.5)"},
        {"zb_gauss_one", "1 * zb^1 * gauss(1)"},
        {"zb2_gauss_one", "1 * zb^2 * gauss(1)"},
        {"zb_plus_z_gauss_one", "1 * zb^1 * gauss(1) + 1 * z^1 * gauss(1)"},
        {"invz", "invz"},
    };
    return catalog;
}

namespace {

std::vector<std::pair<cplx, double>> demo_atoms() {
    return {
        {{0.3, 0.2}, 1.0},  {{-1.1, 0.4}, 0.7}, {{0.8, -1.3}, 1.2}, {{2.0, 1.0}, 0.5},
        {{-1.7, -0.6}, 0.9}, {{1.2, 2.1}, 0.6}, {{-2.3, 1.4}, 1.1}, {{0.1, -2.2}, 0.8},
        {{2.6, -0.5}, 0.4}, {{-0.9, 2.4}, 1.3},
    };
}

std::vector<CatalogEntry> selected_symbols(const Config& cfg) {
    if (!cfg.symbol.empty()) return {{"custom", cfg.symbol}};
    return symbol_catalog();
}

double ratio_with_zero_convention(double a, double b, bool* both_zero = nullptr) {
    if (a < 1e-9 && b < 1e-9) {
        if (both_zero) *both_zero = true;
        return 1.0;
    }
    if (both_zero) *both_zero = false;
    if (b == 0.0) return std::numeric_limits<double>::infinity();
    return a / b;
}

// Design decay of the shared plane grid: p < 2 norms need wider coverage.
double grid_decay(const Config& cfg) { return cfg.alpha * std::min(1.0, cfg.p / 2.0); }

} // namespace

carleson::MeasureSample parse_measure(const std::string& spec, double default_exponent) {
    if (spec.empty()) throw config_error("parse_measure: empty measure spec");
    if (spec.rfind("disk:", 0) == 0) {
        double R = std::strtod(spec.c_str() + 5, nullptr);
        if (!(R > 0.0)) throw config_error("parse_measure: bad disk radius in '" + spec + "'");
        return carleson::MeasureSample::density(SymbolFunction::parse("1"), 1.0, R);
    }
    if (spec == "atoms:demo") return carleson::MeasureSample::atoms(demo_atoms());
    if (spec.size() > 4 && spec.substr(spec.size() - 4) == ".csv") {
        std::ifstream in(spec);
        if (!in) throw config_error("parse_measure: cannot open atom file '" + spec + "'");
        return carleson::MeasureSample::atoms_from_csv(in);
    }
    // grammar density with optional trailing " ^ e" (the grammar itself never
    // contains a spaced caret)
    auto pos = spec.rfind(" ^ ");
    if (pos != std::string::npos) {
        double e = std::strtod(spec.c_str() + pos + 3, nullptr);
        if (!(e > 0.0)) throw config_error("parse_measure: bad exponent in '" + spec + "'");
        return carleson::MeasureSample::density(SymbolFunction::parse(spec.substr(0, pos)), e);
    }
    return carleson::MeasureSample::density(SymbolFunction::parse(spec), default_exponent);
}

report::Table run_main_theorem(const Config& cfg) {
    const auto kb = summing::kappa(cfg.p, cfg.r);
    const double s = cfg.s.value_or(kb.kappa);
    const fock::FockParams params(cfg.alpha, cfg.p);
    const auto lattice = fock::build_lattice(cfg.delta, cfg.radius);
    const auto grid = quad::build_plane_grid(grid_decay(cfg), cfg.grid_points, cfg.tail_tolerance);
    ida::LocalApproxOptions opts;
    opts.degree = cfg.ida_degree;

    report::Table table;
    table.header = cfg.echo("main-theorem");
    table.header["kappa"] = kb.kappa;
    table.columns = {"id",        "symbol",   "ida_norm", "ida_status", "pi_value", "pi_kind",
                     "ratio",     "s",        "M",        "D",          "delta",    "radius"};

    const bool exact_surrogate = cfg.p == 2.0 && cfg.r == 2.0;
    for (const auto& entry : selected_symbols(cfg)) {
        const auto f = SymbolFunction::parse(entry.grammar);
        const auto profile = ida::ida_norm(f, s, cfg.p, 1.0, lattice, opts);

        double pi_value = 0.0;
        const char* pi_kind = "surrogate";
        if (exact_surrogate) {
            fock::Projector proj(grid, cfg.alpha,
                                 fock::projection_degree(cfg.alpha, 0.0,
                                                         cfg.basis_degree + f.max_total_degree()));
            auto cols = fock::hankel_basis_columns(f, params, proj, cfg.basis_degree);
            auto seq = summing::l2_discretization(cols.values, grid, cfg.alpha);
            pi_value = summing::pi2_hilbert_schmidt(seq);
        } else {
            // definitional lower bound from the kernel family on a small core
            std::vector<cplx> pts;
            const double core = std::min(cfg.radius, 4.0);
            for (const auto& z : lattice.points)
                if (std::abs(z) <= core) pts.push_back(z);
            fock::Projector proj(grid, cfg.alpha,
                                 fock::projection_degree(cfg.alpha, core, f.max_total_degree()));
            auto cols = fock::hankel_kernel_columns(f, params, proj, pts);
            double strong = 0.0;
            for (double nrm : cols.lp_norms) strong += std::pow(nrm, cfg.r);
            strong = std::pow(strong, 1.0 / cfg.r);
            double weak = (cfg.p == 2.0)
                              ? summing::kernel_family_weak2_exact(pts, cfg.alpha)
                              : summing::kernel_family_weak_bound(pts.size(), cfg.delta, cfg.alpha,
                                                                  cfg.p, cfg.r);
            pi_value = strong / weak;
            pi_kind = "lower_bound";
        }

        const double ratio = ratio_with_zero_convention(pi_value, profile.norm_value);
        table.add_row({entry.id, entry.grammar, fmt(profile.norm_value), ida::to_string(profile.status),
                       fmt(pi_value), pi_kind, fmt(ratio), fmt(s), std::to_string(cfg.basis_degree),
                       std::to_string(cfg.ida_degree), fmt(cfg.delta), fmt(cfg.radius)});
    }
    return table;
}

report::Table run_lower_chain(const Config& cfg) {
    if (!(cfg.p > 1.0)) throw config_error("lower-chain: requires p > 1 (the chain exponent is p')");
    const double pprime = cfg.p / (cfg.p - 1.0);
    const fock::FockParams params(cfg.alpha, cfg.p);
    const auto lattice = fock::build_lattice(cfg.delta, cfg.radius);
    const auto grid = quad::build_plane_grid(grid_decay(cfg), cfg.grid_points, cfg.tail_tolerance);
    ida::LocalApproxOptions opts;
    opts.degree = cfg.ida_degree;

    double zmax = 0.0;
    for (const auto& z : lattice.points) zmax = std::max(zmax, std::abs(z));

    report::Table table;
    table.header = cfg.echo("lower-chain");
    table.header["exponent"] = pprime;
    table.columns = {"kind", "id", "re", "im", "g_value", "hankel_norm", "c_j",
                     "sum_g_pow", "sum_h_pow", "max_c", "n_points"};

    for (const auto& entry : selected_symbols(cfg)) {
        const auto f = SymbolFunction::parse(entry.grammar);
        fock::Projector proj(grid, cfg.alpha,
                             fock::projection_degree(cfg.alpha, zmax, f.max_total_degree()));
        auto cols = fock::hankel_kernel_columns(f, params, proj, lattice.points);

        std::vector<double> g(lattice.points.size(), 0.0);
        parallel_for(lattice.points.size(), [&](std::size_t j) {
            g[j] = ida::local_deviation(f, lattice.points[j], cfg.p, 2.0 * cfg.delta, opts);
        });

        double max_norm = 0.0;
        for (double v : cols.lp_norms) max_norm = std::max(max_norm, v);
        double sum_g = 0.0, sum_h = 0.0, max_c = 0.0;
        std::vector<double> cj(g.size(), 0.0);
        for (std::size_t j = 0; j < g.size(); ++j) {
            sum_g += std::pow(g[j], pprime);
            sum_h += std::pow(cols.lp_norms[j], pprime);
            if (cols.lp_norms[j] > 1e-12 * std::max(max_norm, 1.0)) {
                cj[j] = g[j] / cols.lp_norms[j];
            } else {
                cj[j] = g[j] <= 1e-9 ? 0.0 : std::numeric_limits<double>::infinity();
            }
            max_c = std::max(max_c, cj[j]);
        }

        for (std::size_t j = 0; j < g.size(); ++j) {
            table.add_row({"point", entry.id, fmt(lattice.points[j].real()), fmt(lattice.points[j].imag()),
                           fmt(g[j]), fmt(cols.lp_norms[j]), fmt(cj[j]), "", "", "", ""});
        }
        table.add_row({"summary", entry.id, "", "", "", "", "", fmt(sum_g), fmt(sum_h), fmt(max_c),
                       std::to_string(g.size())});
    }
    return table;
}

report::Table run_bcp(const Config& cfg) {
    const double s = cfg.s.value_or(2.0);
    const auto lattice = fock::build_lattice(cfg.delta, cfg.radius);
    ida::LocalApproxOptions opts;
    opts.degree = cfg.ida_degree;

    report::Table table;
    table.header = cfg.echo("bcp");
    table.header["s"] = s;
    table.columns = {"kind",      "id",          "side",  "s",     "ida_f", "status_f", "ida_conj",
                     "status_conj", "ratio",     "radius", "partial_sum", "slope", "stderr"};

    for (const auto& entry : selected_symbols(cfg)) {
        const auto f = SymbolFunction::parse(entry.grammar);
        const auto fb = f.conjugate();
        const auto field_f = ida::compute_g_field(f, cfg.p, 1.0, lattice, opts);
        const auto field_fb = ida::compute_g_field(fb, cfg.p, 1.0, lattice, opts);

        const auto prof_f = ida::aggregate_profile(field_f, s);
        const auto prof_fb = ida::aggregate_profile(field_fb, s);
        const double ratio = ratio_with_zero_convention(prof_fb.norm_value, prof_f.norm_value);
        table.add_row({"ratio", entry.id, "", fmt(s), fmt(prof_f.norm_value), ida::to_string(prof_f.status),
                       fmt(prof_fb.norm_value), ida::to_string(prof_fb.status), fmt(ratio), "", "", "", ""});

        if (f.has_builtin()) {
            // growth tables for the counterexample symbol at s in {1, 2}
            const std::vector<double> ladder = {cfg.radius / 4.0, cfg.radius / 2.0, cfg.radius};
            for (double sx : {1.0, 2.0}) {
                for (int side = 0; side < 2; ++side) {
                    const auto& field = side == 0 ? field_f : field_fb;
                    const char* side_name = side == 0 ? "f" : "conj";
                    auto agg = ida::aggregate_power_sums(field.points, field.values, field.delta, sx, ladder);
                    for (std::size_t k = 0; k < agg.radii.size(); ++k) {
                        table.add_row({"growth", entry.id, side_name, fmt(sx), "", "", "",
                                       ida::to_string(agg.status), "", fmt(agg.radii[k]), fmt(agg.sums[k]),
                                       "", ""});
                    }
                    auto fit = ida::loglinear_slope(agg.radii, agg.sums);
                    table.add_row({"slope", entry.id, side_name, fmt(sx), "", "", "", ida::to_string(agg.status),
                                   "", "", "", fmt(fit.slope), fmt(fit.stderr_slope)});
                }
            }
        }
    }
    return table;
}

report::Table run_carleson(const Config& cfg) {
    const auto kb = summing::kappa(cfg.p, cfg.r);
    const double q = kb.kappa / cfg.p;
    if (!(q >= 1.0)) throw config_error("carleson: only the kappa/p >= 1 path is implemented");
    const auto lattice = fock::build_lattice(cfg.delta, cfg.radius);
    double tmin = cfg.t_values.empty() ? 1.0 : *std::min_element(cfg.t_values.begin(), cfg.t_values.end());
    double decay = std::min({grid_decay(cfg), cfg.alpha * tmin / 2.0, cfg.alpha * cfg.p / 2.0});
    const auto grid = quad::build_plane_grid(decay, cfg.grid_points, cfg.tail_tolerance);

    std::vector<std::pair<std::string, carleson::MeasureSample>> measures;
    if (!cfg.measure.empty()) {
        measures.emplace_back(cfg.measure, parse_measure(cfg.measure, cfg.p));
    } else {
        measures.emplace_back("disk:5", parse_measure("disk:5", cfg.p));
        measures.emplace_back("1 * gauss(0.5) ^ 2", parse_measure("1 * gauss(0.5) ^ 2", cfg.p));
        measures.emplace_back("atoms:demo", parse_measure("atoms:demo", cfg.p));
    }

    report::Table table;
    table.header = cfg.echo("carleson");
    table.header["kappa"] = kb.kappa;
    table.header["kappa_over_p"] = q;
    table.columns = {"measure",     "t",          "norm_avg",      "norm_berezin", "ratio",
                     "norm_avg_pp", "norm_ber_pp", "status_avg",   "status_ber",   "embed_lower",
                     "pi2_surrogate"};

    for (const auto& [name, mu] : measures) {
        auto embed = carleson::embedding_lower_bound(mu, cfg.p, cfg.r, cfg.alpha, lattice, &grid);
        double pi2 = (cfg.p == 2.0 && cfg.r == 2.0)
                         ? carleson::embedding_pi2_surrogate(mu, cfg.alpha, cfg.basis_degree, &grid)
                         : std::numeric_limits<double>::quiet_NaN();
        for (double t : cfg.t_values) {
            auto check = carleson::transform_equivalence_check(mu, q, t, cfg.alpha, lattice, &grid);
            table.add_row({name, fmt(t), fmt(check.norm_avg), fmt(check.norm_berezin), fmt(check.ratio),
                           fmt(std::pow(check.norm_avg, 1.0 / cfg.p)),
                           fmt(std::pow(check.norm_berezin, 1.0 / cfg.p)), ida::to_string(check.status_avg),
                           ida::to_string(check.status_berezin), fmt(embed.value),
                           std::isnan(pi2) ? std::string("") : fmt(pi2)});
        }
    }
    return table;
}

namespace {

class SelftestRunner {
public:
    explicit SelftestRunner(report::Table& table) : table_(table) {}

    void check(const std::string& module, const std::string& name, double expected, double got,
               double tol) {
        const bool ok = std::isfinite(got) && std::abs(got - expected) <= tol;
        table_.add_row({module, name, fmt(expected), fmt(got), fmt(tol), ok ? "PASS" : "FAIL"});
        ok ? ++passed_ : ++failed_;
    }
    void check_true(const std::string& module, const std::string& name, bool ok) {
        table_.add_row({module, name, "true", ok ? "true" : "false", "", ok ? "PASS" : "FAIL"});
        ok ? ++passed_ : ++failed_;
    }

    int passed() const { return passed_; }
    int failed() const { return failed_; }

private:
    report::Table& table_;
    int passed_ = 0;
    int failed_ = 0;
};

} // namespace

SelftestResult run_selftest(const Config& cfg) {
    SelftestResult result;
    result.table.header = cfg.echo("selftest");
    result.table.columns = {"module", "assertion", "expected", "got", "tolerance", "status"};
    SelftestRunner t(result.table);

    const double SQPI = std::sqrt(M_PI);

    // ---- quad ----
    auto plane1 = quad::build_plane_grid(1.0, 64, 1e-12);
    if (cfg.inject_grid_corruption) {
        // negative control: nudge a central weight so the Gaussian-mass oracles fail
        plane1.weights[plane1.weights.size() / 2 + 32] *= 1.001;
    }
    auto plane2 = quad::build_plane_grid(2.0, 64, 1e-12);
    t.check("quad", "plane gaussian alpha=1 -> pi", M_PI,
            quad::integrate(plane1, [](cplx z) { return std::exp(-std::norm(z)); }), 1e-8);
    t.check("quad", "plane zero integrand -> 0", 0.0,
            quad::integrate(plane1, [](cplx) { return 0.0; }), 0.0);
    t.check("quad", "plane |z|^2 gaussian -> pi", M_PI,
            quad::integrate(plane1, [](cplx z) { return std::norm(z) * std::exp(-std::norm(z)); }), 1e-8);
    t.check("quad", "plane gaussian alpha=2 -> pi/2", M_PI / 2.0,
            quad::integrate(plane2, [](cplx z) { return std::exp(-2.0 * std::norm(z)); }), 1e-8);
    t.check("quad", "plane odd Re(z) gaussian -> 0", 0.0,
            quad::integrate(plane1, [](cplx z) { return z.real() * std::exp(-std::norm(z)); }), 1e-10);
    auto disk1 = quad::build_disk_grid({0.0, 0.0}, 1.0, 16);
    auto disk2 = quad::build_disk_grid({0.0, 0.0}, 2.0, 16);
    auto diskr = quad::build_disk_grid({0.0, 0.0}, 1.5, 16);
    t.check("quad", "disk area B(0,1) -> pi", M_PI,
            quad::integrate(disk1, [](cplx) { return 1.0; }), 1e-10 * M_PI);
    t.check("quad", "disk mean of w -> 0", 0.0,
            std::abs(quad::integrate(disk1, [](cplx w) { return w; })) / M_PI, 1e-10);
    t.check("quad", "disk mean |w|^2 over B(0,r) -> r^2/2", 1.5 * 1.5 / 2.0,
            quad::integrate(diskr, [](cplx w) { return std::norm(w); }) / (M_PI * 1.5 * 1.5), 1e-8);
    t.check("quad", "disk constant over B(0,2) -> 4pi", 4.0 * M_PI,
            quad::integrate(disk2, [](cplx) { return 1.0; }), 1e-9 * 4.0 * M_PI);
    {
        auto fa = [](cplx z) { return std::exp(-std::norm(z)); };
        auto fb = [](cplx z) { return std::norm(z) * std::exp(-std::norm(z)); };
        double lin = quad::integrate(plane1, [&](cplx z) { return 2.0 * fa(z) + 3.0 * fb(z); });
        double sep = 2.0 * quad::integrate(plane1, fa) + 3.0 * quad::integrate(plane1, fb);
        t.check("quad", "linearity of integrate", 0.0, lin - sep, 1e-12 * std::abs(sep));
    }

    // ---- fock ----
    const fock::FockParams params2(1.0, 2.0);
    t.check("fock", "kernel(0, w) = 1", 1.0, std::abs(fock::kernel({0, 0}, {2.0, 3.0}, 1.0)), 1e-15);
    t.check("fock", "kernel(z, z) at z=1 -> e", std::exp(1.0),
            fock::kernel({1.0, 0.0}, {1.0, 0.0}, 1.0).real(), 1e-12);
    t.check("fock", "hermitian symmetry of kernel", 0.0,
            std::abs(std::conj(fock::kernel({1, 0}, {0, 1}, 1.0)) - fock::kernel({0, 1}, {1, 0}, 1.0)),
            1e-14);
    t.check("fock", "k_0 == 1", 1.0, std::abs(fock::normalized_kernel_value({0, 0}, {1.4, -0.7}, 1.0)),
            1e-15);
    t.check("fock", "|k_z(w)| e^{-|w|^2/2} = e^{-|w-z|^2/2} at z=1,w=2", std::exp(-0.5),
            std::abs(fock::normalized_kernel_value({1, 0}, {2, 0}, 1.0)) * std::exp(-0.5 * 4.0), 1e-12);
    {
        double n1 = fock::lp_norm(fock::normalized_kernel({1.0, 1.0}, 1.0), params2, plane1);
        double n2 = fock::lp_norm(fock::normalized_kernel({2.0, 0.0}, 1.0), params2, plane1);
        t.check("fock", "||k_z||_{2,1} = sqrt(pi) at z=1+i", SQPI, n1, 1e-6);
        t.check("fock", "||k_z||_{2,1} z-independent", SQPI, n2, 1e-6);
    }
    t.check("fock", "P(1) = 1", 1.0,
            std::abs(fock::project([](cplx) { return cplx{1.0, 0.0}; }, {0.3, 0.1}, params2, plane1)),
            1e-8);
    t.check("fock", "P(zbar z)(0) = 1/alpha", 1.0,
            std::abs(fock::project([](cplx w) { return std::conj(w) * w; }, {0, 0}, params2, plane1)),
            1e-6);
    {
        auto basis = fock::BasisTruncation::make(1.0, 12);
        for (cplx z : {cplx{0, 0}, cplx{1, 0}, cplx{1, 1}}) {
            char name[64];
            std::snprintf(name, sizeof name, "P(e_3) = e_3 at (%g,%g)", z.real(), z.imag());
            cplx got = fock::project([&](cplx w) { return basis.eval(3, w); }, z, params2, plane1);
            t.check("fock", name, 0.0, std::abs(got - basis.eval(3, z)), 1e-6);
        }
        for (int m : {0, 5, 10}) {
            char name[48];
            std::snprintf(name, sizeof name, "||e_%d||_{2,1} = 1", m);
            t.check("fock", name, 1.0,
                    fock::lp_norm([&](cplx w) { return basis.eval(m, w); }, params2, plane1), 1e-8);
        }
    }
    {
        fock::Projector proj(plane1, 1.0, 48);
        auto f_holo = SymbolFunction::parse("1 * z^2");
        auto col = fock::hankel_apply(f_holo, [&proj](cplx w) { return proj.basis().eval(1, w); },
                                      params2, proj);
        t.check("fock", "H_f e_1 = 0 for holomorphic f", 0.0, fock::lp_norm(col, params2, plane1), 1e-6);

        auto f_zb = SymbolFunction::parse("1 * zb^1");
        for (int m = 0; m <= 8; ++m) {
            auto hm = fock::hankel_apply(f_zb, [&proj, m](cplx w) { return proj.basis().eval(m, w); },
                                         params2, proj);
            double nn = fock::lp_norm(hm, params2, plane1);
            char name[48];
            std::snprintf(name, sizeof name, "||H_zb e_%d||^2 = 1", m);
            t.check("fock", name, 1.0, nn * nn, 1e-5);
        }

        const cplx c{2.0, 1.0};
        auto fc = f_zb.scaled(c);
        auto h1 = fock::hankel_apply(f_zb, [&proj](cplx w) { return proj.basis().eval(0, w); }, params2, proj);
        auto h2 = fock::hankel_apply(fc, [&proj](cplx w) { return proj.basis().eval(0, w); }, params2, proj);
        double dev = 0.0;
        for (cplx w : {cplx{0, 0}, cplx{1, 0}, cplx{0, 1}, cplx{-1, 1}, cplx{0.5, -0.5}})
            dev = std::max(dev, std::abs(h2(w) - c * h1(w)));
        t.check("fock", "H_{cf} = c H_f at 5 probes", 0.0, dev, 1e-10);
    }
    {
        auto zero_norm = fock::lp_norm([](cplx) { return cplx{0, 0}; }, params2, plane1);
        t.check("fock", "||0||_{p,alpha} = 0", 0.0, zero_norm, 0.0);
        t.check("fock", "||1||_{2,1} = sqrt(pi)", SQPI,
                fock::lp_norm([](cplx) { return cplx{1, 0}; }, params2, plane1), 1e-8);
        auto g = [](cplx w) { return w * std::exp(-std::norm(w)); };
        double ng = fock::lp_norm(g, params2, plane1);
        double ncg = fock::lp_norm([&](cplx w) { return 2.5 * g(w); }, params2, plane1);
        t.check("fock", "homogeneity of lp_norm", 2.5 * ng, ncg, 1e-12 * ncg);
    }
    {
        auto lat1 = fock::build_lattice(1.0, 6.0, 1.0);
        t.check("fock", "lattice multiplicity N = 4 (delta=1, c=1)", 4.0,
                static_cast<double>(lat1.covering_multiplicity), 0.0);
        auto lat10 = fock::build_lattice(1.0, 10.0, 1.0);
        int expected_count = 0;
        for (int j = -11; j <= 11; ++j)
            for (int k = -11; k <= 11; ++k)
                if (std::hypot(j, k) <= 11.0) ++expected_count;
        t.check("fock", "lattice point count (R=10, delta=1)", expected_count,
                static_cast<double>(lat10.points.size()), 0.0);
        double mind = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < lat1.points.size(); ++i)
            for (std::size_t j = i + 1; j < lat1.points.size(); ++j)
                mind = std::min(mind, std::abs(lat1.points[i] - lat1.points[j]));
        t.check("fock", "lattice min pairwise distance = delta", 1.0, mind, 1e-12);
    }

    // ---- ida ----
    ida::LocalApproxOptions iopts;
    {
        auto z3 = SymbolFunction::parse("1 * z^3");
        t.check("ida", "G(z^3) = 0", 0.0, ida::local_deviation(z3, {0.7, -0.2}, 2.0, 1.0, iopts), 1e-10);
        auto zb = SymbolFunction::parse("1 * zb^1");
        t.check("ida", "G_{2,1}(zb)(0) = 1/sqrt(2)", 1.0 / std::sqrt(2.0),
                ida::local_deviation(zb, {0, 0}, 2.0, 1.0, iopts), 1e-8);
        t.check("ida", "G_{2,2}(zb)(0) = sqrt(2)", std::sqrt(2.0),
                ida::local_deviation(zb, {0, 0}, 2.0, 2.0, iopts), 1e-8);
        t.check("ida", "translation covariance of G(zb)", 1.0 / std::sqrt(2.0),
                ida::local_deviation(zb, {2.0, 1.0}, 2.0, 1.0, iopts), 1e-8);
        t.check("ida", "local_mean(1) = 1", 1.0,
                ida::local_mean(SymbolFunction::parse("1"), {0.4, 0.4}, 3.0, 1.3), 1e-10);
        t.check("ida", "local_mean(zb)(0) = 1/sqrt(2)", 1.0 / std::sqrt(2.0),
                ida::local_mean(zb, {0, 0}, 2.0, 1.0), 1e-8);
        auto zb1 = SymbolFunction::parse("1 * zb^1 + 1");
        t.check("ida", "local_mean(zb+1)(0) = sqrt(3/2)", std::sqrt(1.5),
                ida::local_mean(zb1, {0, 0}, 2.0, 1.0), 1e-8);
        t.check("ida", "local_deviation(zb+1)(0) = 1/sqrt(2)", 1.0 / std::sqrt(2.0),
                ida::local_deviation(zb1, {0, 0}, 2.0, 1.0, iopts), 1e-8);
    }
    {
        auto lat = fock::build_lattice(0.5, 4.0, 1.0);
        auto holo = SymbolFunction::parse("1 * z^2");
        t.check("ida", "ida_norm of holomorphic polynomial = 0", 0.0,
                ida::ida_norm(holo, 2.0, 2.0, 1.0, lat, iopts).norm_value, 1e-8);
        auto f = SymbolFunction::parse("1 * zb^1 * gauss(1)");
        double base = ida::ida_norm(f, 2.0, 2.0, 1.0, lat, iopts).norm_value;
        double scaled = ida::ida_norm(f.scaled({3.0, 0.0}), 2.0, 2.0, 1.0, lat, iopts).norm_value;
        t.check("ida", "homogeneity: ida_norm(3f) = 3 ida_norm(f)", 3.0 * base, scaled, 1e-6 * scaled);
        auto rep = ida::r_independence_check(f, 2.0, 2.0, 0.5, 1.0, lat, iopts);
        t.check_true("ida", "r-independence ratio in [1/10, 10]", rep.ratio >= 0.1 && rep.ratio <= 10.0);
        auto rep0 = ida::r_independence_check(holo, 2.0, 2.0, 0.5, 1.0, lat, iopts);
        t.check("ida", "r-independence of holomorphic reports ratio 1", 1.0, rep0.ratio, 0.0);
    }

    // ---- summing ----
    {
        t.check("summing", "kappa(1.5, 7) = 2", 2.0, summing::kappa(1.5, 7.0).kappa, 0.0);
        t.check("summing", "kappa(4, 1) = 4/3", 4.0 / 3.0, summing::kappa(4.0, 1.0).kappa, 1e-15);
        t.check("summing", "kappa(4, 2) = 2", 2.0, summing::kappa(4.0, 2.0).kappa, 0.0);
        t.check("summing", "kappa(4, 10) = 4", 4.0, summing::kappa(4.0, 10.0).kappa, 0.0);
        t.check("summing", "kappa(2, r) = 2", 2.0, summing::kappa(2.0, 3.3).kappa, 0.0);
    }
    {
        Eigen::MatrixXcd two(2, 2);
        two << 1, 0, 0, 1;
        auto seq = summing::VectorSequence::hilbert(two);
        t.check("summing", "strong norm of two unit vectors (q=2)", std::sqrt(2.0),
                summing::strong_norm(seq, 2.0), 1e-14);
        t.check("summing", "strong norm of empty sequence", 0.0,
                summing::strong_norm(summing::VectorSequence::hilbert(Eigen::MatrixXcd(2, 0)), 2.0), 0.0);
        Eigen::MatrixXcd v34(2, 2);
        v34 << 3, 0, 0, 4;
        t.check("summing", "strong norm {(3,0),(0,4)} q=1 -> 7", 7.0,
                summing::strong_norm(summing::VectorSequence::hilbert(v34), 1.0), 1e-13);
        t.check("summing", "weak norm of standard basis (p=2) = 1", 1.0,
                summing::weak_norm(seq, 2.0).value, 1e-12);
        Eigen::MatrixXcd dup(2, 2);
        dup << 1, 1, 0, 0;
        t.check("summing", "weak norm of duplicated vector = sqrt(2)", std::sqrt(2.0),
                summing::weak_norm(summing::VectorSequence::hilbert(dup), 2.0).value, 1e-12);
        Eigen::MatrixXcd one(3, 1);
        one << cplx{1, 1}, cplx{0, 2}, cplx{-1, 0};
        auto single = summing::VectorSequence::hilbert(one);
        t.check("summing", "weak norm of single vector (p=3) = ||x||", one.col(0).norm(),
                summing::weak_norm(single, 3.0).value, 1e-6);
    }
    {
        Eigen::MatrixXcd id3 = Eigen::MatrixXcd::Identity(3, 3);
        t.check("summing", "pi2 of 3-dim identity = sqrt(3)", std::sqrt(3.0),
                summing::pi2_hilbert_schmidt(summing::VectorSequence::hilbert(id3)), 1e-14);
        Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(3, 3);
        diag(0, 0) = 1.0;
        diag(1, 1) = 0.5;
        diag(2, 2) = 0.25;
        t.check("summing", "pi2 of diagonal (1,1/2,1/4)", std::sqrt(1.0 + 0.25 + 0.0625),
                summing::pi2_hilbert_schmidt(summing::VectorSequence::hilbert(diag)), 1e-14);
        t.check("summing", "pi2 of zero operator = 0", 0.0,
                summing::pi2_hilbert_schmidt(summing::VectorSequence::hilbert(Eigen::MatrixXcd::Zero(3, 3))),
                0.0);
    }
    {
        t.check("summing", "khintchine c=(1,1), p=1 -> 1/sqrt(2)", 1.0 / std::sqrt(2.0),
                summing::khintchine_ratio({{1, 0}, {1, 0}}, 1.0), 1e-15);
        t.check("summing", "khintchine single coefficient -> 1", 1.0,
                summing::khintchine_ratio({{1, 0}}, 1.7), 1e-15);
        t.check("summing", "khintchine p=2 -> 1 exactly", 1.0,
                summing::khintchine_ratio({{1, 0}, {1, 0}, {1, 0}, {1, 0}}, 2.0), 1e-14);
    }
    {
        Eigen::MatrixXcd zero_cols = Eigen::MatrixXcd::Zero(4, 3);
        auto est = summing::pi_r_lower_bound(summing::VectorSequence::hilbert(zero_cols), 1.0, 2.0);
        t.check("summing", "pi_r lower bound of zero columns = 0", 0.0, est.value, 0.0);
        Eigen::MatrixXcd cols(2, 2);
        cols << 1, 0, 0, 2;
        auto e1 = summing::pi_r_lower_bound(summing::VectorSequence::hilbert(cols), 1.5, 2.0);
        auto e2 = summing::pi_r_lower_bound(summing::VectorSequence::hilbert(2.0 * cols), 1.5, 2.0);
        t.check("summing", "pi_r lower bound scales with the columns", 2.0 * e1.value, e2.value, 1e-14);
    }
    {
        auto g = summing::rademacher_test_function({{1, 0}}, {1}, {cplx{0.5, 0.5}}, 1.0);
        double dev = 0.0;
        for (cplx w : {cplx{0, 0}, cplx{1, 0}, cplx{0.3, -0.4}})
            dev = std::max(dev, std::abs(g(w) - fock::normalized_kernel_value({0.5, 0.5}, w, 1.0)));
        t.check("summing", "single-point test function = k_z", 0.0, dev, 1e-15);

        auto g2 = summing::rademacher_test_function({{1, 0}, {1, 0}}, {1, 1}, {cplx{0, 0}, cplx{7, 0}}, 1.0);
        double n2 = fock::lp_norm(g2, params2, plane1);
        t.check("summing", "far-separated kernel sum: ||g||^2 ~= 2 pi", 2.0 * M_PI, n2 * n2,
                0.05 * 2.0 * M_PI);

        auto lat3 = fock::build_lattice(1.0, 1.5, 1.0); // 3x3 core
        std::vector<cplx> pts(lat3.points.begin(), lat3.points.begin() + std::min<std::size_t>(9, lat3.points.size()));
        std::vector<cplx> cs(pts.size(), cplx{1.0 / 3.0, 0.0});
        std::vector<int> ones(pts.size(), 1);
        auto g9 = summing::rademacher_test_function(cs, ones, pts, 1.0);
        double l2c = 0.0;
        for (const auto& c : cs) l2c += std::norm(c);
        l2c = std::sqrt(l2c);
        double lhs = fock::lp_norm(g9, params2, plane1);
        t.check_true("summing", "kernel-combination bound ||g|| <= 3 ||c||_2 sqrt(pi)",
                     lhs <= 3.0 * l2c * SQPI);
    }

    // ---- carleson ----
    {
        auto lebesgue = carleson::MeasureSample::density(SymbolFunction::parse("1"), 1.0);
        t.check("carleson", "muhat of dv = 1", 1.0, carleson::averaged_function(lebesgue, {1.2, -0.3}), 1e-9);
        auto atom = carleson::MeasureSample::atoms({{cplx{0, 0}, 1.0}});
        t.check("carleson", "atom muhat inside", 1.0 / M_PI, carleson::averaged_function(atom, {0.5, 0.0}),
                1e-15);
        t.check("carleson", "atom muhat outside", 0.0, carleson::averaged_function(atom, {2.0, 0.0}), 0.0);
        t.check("carleson", "atom muhat on boundary counts inside", 1.0 / M_PI,
                carleson::averaged_function(atom, {1.0, 0.0}), 1e-15);
        auto g = SymbolFunction::parse("1 * zb^1 * gauss(0.5)");
        auto mu_g = carleson::MeasureSample::density(g, 2.0);
        cplx a{1.0, 1.0};
        // translation equivariance probed against the defining disk integral
        auto disk = quad::build_disk_grid(a + cplx{0.7, 0.0}, 1.0, 24);
        double direct = quad::integrate(disk, [&](cplx w) { return std::pow(std::abs(g(w - a)), 2.0); }) / M_PI;
        t.check("carleson", "muhat translation equivariance", direct,
                carleson::averaged_function(mu_g, {0.7, 0.0}), 1e-8);

        t.check("carleson", "berezin of dv (alpha=1,t=2) = pi", M_PI,
                carleson::berezin_transform(lebesgue, 2.0, 1.0, {0.5, 0.5}, &plane1), 1e-6);
        t.check("carleson", "berezin of atom at z = mass", 0.75,
                carleson::berezin_transform(carleson::MeasureSample::atoms({{cplx{1, 1}, 0.75}}), 1.3, 1.0,
                                            {1, 1}),
                1e-15);
        t.check("carleson", "berezin of atom at distance 2 = m e^{-2}", 0.75 * std::exp(-2.0),
                carleson::berezin_transform(carleson::MeasureSample::atoms({{cplx{2, 0}, 0.75}}), 1.0, 1.0,
                                            {0, 0}),
                1e-15);
    }
    {
        auto lat = fock::build_lattice(0.5, 3.0, 1.0);
        auto atom = carleson::MeasureSample::atoms({{cplx{0.2, 0.1}, 1.0}, {cplx{-1.0, 0.5}, 0.5}});
        auto chk = carleson::transform_equivalence_check(atom, 1.0, 1.0, 1.0, lat, &plane1);
        auto atom2 = carleson::MeasureSample::atoms({{cplx{0.2, 0.1}, 3.0}, {cplx{-1.0, 0.5}, 1.5}});
        auto chk2 = carleson::transform_equivalence_check(atom2, 1.0, 1.0, 1.0, lat, &plane1);
        t.check("carleson", "transform norms scale linearly in mu (avg)", 3.0 * chk.norm_avg,
                chk2.norm_avg, 1e-12 * chk2.norm_avg);
        t.check("carleson", "transform norms scale linearly in mu (berezin)", 3.0 * chk.norm_berezin,
                chk2.norm_berezin, 1e-12 * chk2.norm_berezin);

        auto single = carleson::MeasureSample::atoms({{cplx{0, 0}, 1.0}});
        auto lb = carleson::embedding_lower_bound(single, 2.0, 2.0, 1.0, lat, &plane1);
        // single-atom oracle: ||Id k_0||_{L^2(dmu)} = 1 at the atom
        t.check_true("carleson", "embedding lower bound positive for a unit atom", lb.value > 0.0);
        auto dbl = carleson::embedding_lower_bound(
            carleson::MeasureSample::atoms({{cplx{0, 0}, 2.0}}), 2.0, 2.0, 1.0, lat, &plane1);
        t.check("carleson", "doubling atom mass scales bound by 2^{1/2}", std::sqrt(2.0) * lb.value,
                dbl.value, 1e-12 * dbl.value);
        auto pi2 = carleson::embedding_pi2_surrogate(single, 1.0, 30);
        t.check_true("carleson", "embedding lower bound <= pi2 surrogate", lb.value <= pi2 + 1e-12);
    }

    result.passed = t.passed();
    result.failed = t.failed();
    return result;
}

} // namespace focklab::experiments
