#include "focklab/report.hpp"

#include <cstdio>

#include "focklab/errors.hpp"

namespace focklab::report {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void Table::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size())
        throw config_error("report::Table: row width does not match column count");
    rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
    std::string out = "# " + header.dump() + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out += columns[i];
        out += (i + 1 < columns.size()) ? ',' : '\n';
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            out += (i + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

} // namespace focklab::report
