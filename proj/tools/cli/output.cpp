#include "cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace rho::cli {

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return buf;
}

nlohmann::ordered_json json_number(double value) {
    if (!std::isfinite(value)) {
        return nullptr;
    }
    // shortest round-trip form of the 15-digit value, so dumps stay at <= 15 digits
    return std::strtod(format_number(value).c_str(), nullptr);
}

nlohmann::ordered_json json_number(const std::optional<double>& value) {
    return value ? json_number(*value) : nlohmann::ordered_json(nullptr);
}

void CsvTable::add_metadata(std::string key, std::string value) {
    metadata_.emplace_back(std::move(key), std::move(value));
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) {
        throw std::logic_error("CSV row width does not match the header");
    }
    rows_.push_back(std::move(cells));
}

void CsvTable::write(std::ostream& out) const {
    for (const auto& [key, value] : metadata_) {
        out << "# " << key << '=' << value << '\n';
    }
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << cells[i];
        }
        out << '\n';
    };
    line(header_);
    for (const auto& row : rows_) {
        line(row);
    }
}

}  // namespace rho::cli
