#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "focklab/experiments.hpp"
#include "focklab/version.hpp"

namespace {

using focklab::experiments::Config;

void add_common_options(CLI::App* sub, Config& cfg) {
    sub->add_option("--alpha", cfg.alpha, "Gaussian weight parameter alpha > 0");
    sub->add_option("--p", cfg.p, "integrability exponent p >= 1");
    sub->add_option("--r", cfg.r, "summing exponent r >= 1");
    sub->add_option("--s", cfg.s, "IDA aggregation exponent override (default kappa(p,r))");
    sub->add_option("--delta", cfg.delta, "lattice spacing");
    sub->add_option("--radius", cfg.radius, "lattice bounding radius");
    sub->add_option("--basis-degree,-M", cfg.basis_degree, "basis truncation degree M");
    sub->add_option("--ida-degree,-D", cfg.ida_degree, "local approximation degree D");
    sub->add_option("--grid-points", cfg.grid_points, "plane grid points per axis");
    sub->add_option("--tail-tol", cfg.tail_tolerance, "plane grid tail tolerance");
    sub->add_option("--symbol", cfg.symbol, "symbol grammar string (default: frozen catalog)");
    sub->add_option("--measure", cfg.measure,
                    "measure spec: disk:R | atoms:demo | <file>.csv | <grammar> [^ e]");
    sub->add_option("--t", cfg.t_values, "Berezin transform t values");
    sub->add_option("--seed", cfg.seed, "random seed for Monte Carlo paths");
    sub->add_option("--out", cfg.out, "output CSV path (default stdout)");
}

int write_output(const Config& cfg, const std::string& csv) {
    if (cfg.out.empty()) {
        std::cout << csv;
        return 0;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
        std::cerr << "focklab: cannot open output file '" << cfg.out << "'\n";
        return 2;
    }
    out << csv;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"focklab: a numerical laboratory for Hankel operators on the Fock space"};
    app.set_version_flag("--version", std::string("focklab ") + focklab::kVersion);
    app.require_subcommand(1);

    Config cfg;
    auto* selftest = app.add_subcommand("selftest", "run the built-in assertion suite");
    selftest->add_flag("--inject-grid-corruption", cfg.inject_grid_corruption,
                       "negative control: corrupt a quadrature weight")
        ->group("");
    auto* mainthm = app.add_subcommand("main-theorem",
                                       "IDA norm vs summing-norm surrogate per symbol");
    auto* lower = app.add_subcommand("lower-chain",
                                     "per-point domination G_{p,2delta}(f)(z_j) <= C ||H_f k_{z_j}||");
    auto* bcp = app.add_subcommand("bcp", "IDA norms of f vs conj(f), with counterexample growth tables");
    auto* carl = app.add_subcommand("carleson", "averaged function vs Berezin transform, embedding bounds");
    for (auto* sub : {selftest, mainthm, lower, bcp, carl}) add_common_options(sub, cfg);

    // lower-chain defaults to a 25-point lattice unless --radius is given
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        using namespace focklab::experiments;
        if (selftest->parsed()) {
            auto res = run_selftest(cfg);
            int rc = write_output(cfg, res.table.to_csv());
            if (rc != 0) return rc;
            if (res.failed == 0) {
                std::printf("SELFTEST PASS assertions=%d\n", res.passed + res.failed);
                return 0;
            }
            for (const auto& row : res.table.rows) {
                if (row.back() == "FAIL") {
                    std::printf("SELFTEST FAIL failures=%d/%d first: module=%s op=%s expected=%s got=%s\n",
                                res.failed, res.passed + res.failed, row[0].c_str(), row[1].c_str(),
                                row[2].c_str(), row[3].c_str());
                    break;
                }
            }
            return 1;
        }
        focklab::report::Table table;
        if (mainthm->parsed()) {
            table = run_main_theorem(cfg);
        } else if (lower->parsed()) {
            if (lower->count("--radius") == 0) cfg.radius = 1.45; // 25 points at delta = 1/2
            table = run_lower_chain(cfg);
        } else if (bcp->parsed()) {
            table = run_bcp(cfg);
        } else {
            table = run_carleson(cfg);
        }
        return write_output(cfg, table.to_csv());
    } catch (const focklab::config_error& e) {
        std::cerr << "focklab: config error: " << e.what() << "\n";
        return 2;
    } catch (const focklab::numeric_error& e) {
        std::cerr << "focklab: numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "focklab: " << e.what() << "\n";
        return 3;
    }
}
