#include "psryd/table_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace psryd {

std::string format_cell(const Cell& cell) {
    if (std::holds_alternative<long long>(cell))
        return std::to_string(std::get<long long>(cell));
    if (std::holds_alternative<std::string>(cell))
        return std::get<std::string>(cell);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", std::get<double>(cell));
    return buf;
}

void write_csv(std::ostream& os, const OutputTable& table) {
    for (auto it = table.metadata.begin(); it != table.metadata.end(); ++it)
        os << "# " << it.key() << "=" << it.value().dump() << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << format_cell(row[i]) << (i + 1 < row.size() ? "," : "");
        os << "\n";
    }
}

void write_json(std::ostream& os, const OutputTable& table) {
    nlohmann::ordered_json j;
    for (auto it = table.metadata.begin(); it != table.metadata.end(); ++it)
        j[it.key()] = it.value();
    j["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (std::holds_alternative<long long>(cell))
                r.push_back(std::get<long long>(cell));
            else if (std::holds_alternative<double>(cell))
                r.push_back(std::get<double>(cell));
            else
                r.push_back(std::get<std::string>(cell));
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
}

void write_table(const OutputTable& table, const std::string& format,
                 const std::string& path) {
    const bool to_stdout = path.empty() || path == "-";
    std::ofstream file;
    if (!to_stdout) {
        file.open(path, std::ios::binary);
        if (!file)
            throw std::invalid_argument("cannot open output file \"" + path +
                                        "\"");
    }
    std::ostream& os = to_stdout ? std::cout : file;
    if (format == "csv")
        write_csv(os, table);
    else if (format == "json")
        write_json(os, table);
    else
        throw std::invalid_argument("unknown output format \"" + format +
                                    "\"");
    os.flush();
}

} // namespace psryd
