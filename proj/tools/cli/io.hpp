#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace heunwell::cli {

/// Fixed 17 significant digits.
std::string format_double(double v);

/// RFC 4180 field quoting when needed.
std::string csv_field(const std::string& s);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(std::vector<std::string> row);
    std::string str() const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes to `<path>.tmp` and renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace heunwell::cli
