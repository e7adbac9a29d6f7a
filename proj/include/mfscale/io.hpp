#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfscale/series.hpp"

namespace mfscale {

/// Parses `date,value` rows. The date column is either an ISO-8601 calendar
/// date (YYYY-MM-DD, converted to days since 1970-01-01) or an integer
/// index; one style per file. A non-numeric first row is taken as a header.
/// Blank lines and lines starting with '#' are skipped.
Series parse_csv(std::string_view text, std::string label = {});

/// Reads and parses a CSV file. The label is the file stem.
Series ingest_csv(const std::filesystem::path& path);

/// Renders a series as `index,value` CSV with shortest round-trip numbers.
std::string format_csv(const Series& series);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

/// Nine significant digits, as used in plot exports.
std::string format_sig9(double value);

/// Shortest decimal that parses back to exactly `value`.
std::string format_shortest(double value);

struct TsvColumn {
    std::string name;  // e.g. "tau[samples]"
    std::vector<double> values;
};

/// Tab-separated table with a single `#` header line naming the columns.
std::string format_tsv(std::span<const TsvColumn> columns);

}  // namespace mfscale
