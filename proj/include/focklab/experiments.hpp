#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "focklab/carleson.hpp"
#include "focklab/report.hpp"

namespace focklab::experiments {

struct Config {
    double alpha = 1.0;
    double p = 2.0;
    double r = 2.0;
    std::optional<double> s; // IDA exponent override; default kappa(p, r)
    double delta = 0.5;
    double radius = 8.0;
    int basis_degree = 30; // M
    int ida_degree = 8;    // D
    int grid_points = 120;
    double tail_tolerance = 1e-10;
    std::string symbol;  // single-symbol override; empty = frozen catalog
    std::string measure; // carleson measure spec; empty = built-in test measures
    std::vector<double> t_values{1.0, 2.0};
    std::uint64_t seed = 12345;
    std::string out; // output path; empty = stdout
    bool inject_grid_corruption = false;

    nlohmann::ordered_json echo(const std::string& cmd) const;
};

struct CatalogEntry {
    std::string id;
    std::string grammar;
};

// The frozen six-symbol population behind every band contract.
const std::vector<CatalogEntry>& symbol_catalog();

// Measure spec: 'disk:R' (truncated Lebesgue), 'atoms:demo' (fixed 10-atom
// cloud), '<path>.csv' (atom file), or a symbol grammar with an optional
// trailing ' ^ <exponent>' (default exponent = default_exponent).
carleson::MeasureSample parse_measure(const std::string& spec, double default_exponent);

report::Table run_main_theorem(const Config& cfg);
report::Table run_lower_chain(const Config& cfg);
report::Table run_bcp(const Config& cfg);
report::Table run_carleson(const Config& cfg);

struct SelftestResult {
    int passed = 0;
    int failed = 0;
    report::Table table;
};
SelftestResult run_selftest(const Config& cfg);

} // namespace focklab::experiments
