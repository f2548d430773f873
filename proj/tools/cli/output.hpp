#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace rho::cli {

/// Fifteen significant digits, the fixed precision of every emitted number.
std::string format_number(double value);

/// A JSON number rounded to fifteen significant digits; null if not finite.
nlohmann::ordered_json json_number(double value);
nlohmann::ordered_json json_number(const std::optional<double>& value);

/// CSV table with optional leading "# key=value" metadata lines.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_metadata(std::string key, std::string value);
    /// Cells are preformatted; an empty cell marks a missing value.
    void add_row(std::vector<std::string> cells);
    void write(std::ostream& out) const;

private:
    std::vector<std::pair<std::string, std::string>> metadata_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace rho::cli
