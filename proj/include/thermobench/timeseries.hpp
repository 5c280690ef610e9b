#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace thermobench {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Unit { MW, Dimensionless, Kelvin, Celsius };

std::string unit_name(Unit u);
Unit unit_from_name(const std::string& s);

struct Column {
    std::string name;
    std::vector<double> values;
    Unit unit = Unit::Dimensionless;
    std::string country;  // empty when the column is not country-tagged
};

// Hourly wide table. Timestamps are unix seconds (UTC), strictly increasing.
// Immutable by convention once built; validate() enforces the invariants.
struct TimeSeriesTable {
    std::vector<std::int64_t> timestamps;
    std::vector<Column> columns;

    std::size_t rows() const { return timestamps.size(); }

    const Column& column(const std::string& name) const;
    const Column* find_column(const std::string& name) const;

    // Throws Error on non-monotone or duplicate timestamps, ragged columns,
    // or non-finite values.
    void validate() const;
};

enum class MissingPolicy { DropRow, Reject };

struct LoadOptions {
    char delimiter = ';';
    std::string timestamp_column = "utc_timestamp";
    MissingPolicy missing = MissingPolicy::DropRow;
    // When false, gaps are still recorded in the report; they only become a
    // hard error with require_uniform set.
    bool require_uniform = false;
    // Columns named "CC_variable" (two uppercase letters) get a country tag.
    bool parse_country_prefix = true;
};

struct LoadReport {
    std::size_t rows_read = 0;
    std::size_t rows_dropped = 0;
    std::size_t columns_retained = 0;
    std::size_t missing_cells = 0;
    std::size_t gaps = 0;  // non-1h steps in the retained sequence
};

struct LoadResult {
    TimeSeriesTable table;
    LoadReport report;
};

LoadResult load_table(const std::string& path, const LoadOptions& opts = {});

// Canonical writer: ';'-delimited by default, ISO 8601 UTC timestamps,
// '%.17g' numbers so load_table(write_table(t)) reproduces t bit for bit.
void write_table(const TimeSeriesTable& table, const std::string& path,
                 char delimiter = ';');

}  // namespace thermobench
