#pragma once

// Experiment orchestration and CSV emission.

#include "emslb/config.hpp"
#include "emslb/kernels.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace emslb {

inline constexpr const char* kVersion = "0.1.0";

struct Column {
    std::string name;
    std::string unit; // "1" dimensionless, "-" text

    // name-unit, or the bare name for dimensionless and text columns.
    std::string header() const;
};

using Cell = std::variant<double, std::string>;

struct ResultTable {
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<std::string> warnings; // reported on stderr by the CLI, never in the CSV

    // Throws InvalidArgument on width mismatch or a non-finite number.
    void add_row(std::vector<Cell> row);
    // Index of a column by header, throws InvalidArgument if absent.
    std::size_t column(const std::string& header) const;
};

// Runs the configured experiment. Rows follow sweep order; the output depends only on
// the configuration (seed included), not on the thread count.
ResultTable run_experiment(const ScenarioConfig& cfg, Execution exec = Execution::Parallel);

// '# key=value' provenance lines, the header row, then rows. Numbers use the shortest
// representation that round-trips; LF line endings.
std::string to_csv(const ResultTable& table);

// Writes to_csv(table) to path. Throws Error naming the path on I/O failure.
void emit_csv(const ResultTable& table, const std::string& path);

} // namespace emslb
