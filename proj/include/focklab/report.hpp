#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace focklab::report {

// Deterministic %.12g float formatting for CSV bodies.
std::string fmt(double v);

// CSV table with a '#'-prefixed JSON header line carrying the full config.
struct Table {
    nlohmann::ordered_json header;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::string to_csv() const;
};

} // namespace focklab::report
