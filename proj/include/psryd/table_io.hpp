#pragma once

// Machine-readable output: CSV with '#' metadata comments, or versioned
// JSON. No timestamps anywhere, so reruns are byte-identical.

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace psryd {

using Cell = std::variant<long long, double, std::string>;

struct OutputTable {
    nlohmann::ordered_json metadata; // version, resolved config, seed, ...
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_cell(const Cell& cell);

void write_csv(std::ostream& os, const OutputTable& table);
void write_json(std::ostream& os, const OutputTable& table);

// Dispatch on format ("csv" | "json"); path "-" writes to stdout.
void write_table(const OutputTable& table, const std::string& format,
                 const std::string& path);

} // namespace psryd
