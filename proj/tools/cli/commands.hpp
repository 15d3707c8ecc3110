#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace dwring::cli {

/// Rows in grid order. Grid columns come first.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes;
};

Table run_command(const RunConfig& config);

/// Metadata comment lines followed by the table, as CSV or JSON.
std::string render(const RunConfig& config, const Table& table);

}  // namespace dwring::cli
