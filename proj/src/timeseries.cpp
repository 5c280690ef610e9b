#include "thermobench/timeseries.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "thermobench/civil_time.hpp"

namespace thermobench {

std::string unit_name(Unit u) {
    switch (u) {
        case Unit::MW: return "MW";
        case Unit::Dimensionless: return "dimensionless";
        case Unit::Kelvin: return "kelvin";
        case Unit::Celsius: return "celsius";
    }
    return "dimensionless";
}

Unit unit_from_name(const std::string& s) {
    if (s == "MW") return Unit::MW;
    if (s == "kelvin") return Unit::Kelvin;
    if (s == "celsius") return Unit::Celsius;
    return Unit::Dimensionless;
}

const Column* TimeSeriesTable::find_column(const std::string& name) const {
    for (const auto& c : columns)
        if (c.name == name) return &c;
    return nullptr;
}

const Column& TimeSeriesTable::column(const std::string& name) const {
    if (const Column* c = find_column(name)) return *c;
    throw Error("no such column: " + name);
}

void TimeSeriesTable::validate() const {
    for (std::size_t i = 1; i < timestamps.size(); ++i) {
        if (timestamps[i] == timestamps[i - 1])
            throw Error("duplicate timestamps at row " + std::to_string(i));
        if (timestamps[i] < timestamps[i - 1])
            throw Error("non-monotone timestamps at row " + std::to_string(i));
    }
    for (const auto& c : columns) {
        if (c.values.size() != timestamps.size())
            throw Error("column " + c.name + " length " +
                        std::to_string(c.values.size()) + " != row count " +
                        std::to_string(timestamps.size()));
        for (double v : c.values)
            if (!std::isfinite(v)) throw Error("non-finite value in column " + c.name);
    }
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == delim) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* p = s.c_str();
    char* end = nullptr;
    out = std::strtod(p, &end);
    if (end == p) return false;
    while (*end == ' ' || *end == '\t') ++end;
    return *end == '\0' && std::isfinite(out);
}

bool has_country_prefix(const std::string& name) {
    return name.size() > 3 && name[2] == '_' &&
           std::isupper(static_cast<unsigned char>(name[0])) &&
           std::isupper(static_cast<unsigned char>(name[1]));
}

}  // namespace

LoadResult load_table(const std::string& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw Error("empty file: " + path);
    const auto header = split_line(line, opts.delimiter);

    std::size_t ts_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == opts.timestamp_column) ts_col = i;
    if (ts_col == header.size())
        throw Error("timestamp column '" + opts.timestamp_column + "' not in header");

    const std::size_t ncols = header.size();
    std::vector<std::int64_t> stamps;
    std::vector<std::vector<double>> raw(ncols);
    std::vector<std::size_t> numeric_count(ncols, 0);

    LoadReport report;
    std::vector<bool> row_ok;

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_line(line, opts.delimiter);
        if (cells.size() != ncols)
            throw Error("row " + std::to_string(lineno) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(ncols));
        ++report.rows_read;

        const auto ts = parse_iso8601_utc(cells[ts_col]);
        if (!ts)
            throw Error("row " + std::to_string(lineno) +
                        ": unparseable timestamp '" + cells[ts_col] + "'");

        bool ok = true;
        for (std::size_t i = 0; i < ncols; ++i) {
            if (i == ts_col) continue;
            double v;
            if (parse_double(cells[i], v)) {
                raw[i].push_back(v);
                ++numeric_count[i];
            } else {
                ++report.missing_cells;
                if (opts.missing == MissingPolicy::Reject)
                    throw Error("row " + std::to_string(lineno) +
                                ": missing/non-numeric cell in column " + header[i]);
                raw[i].push_back(std::nan(""));
                ok = false;
            }
        }
        stamps.push_back(*ts);
        row_ok.push_back(ok);
        if (!ok) ++report.rows_dropped;
    }

    for (std::size_t i = 0; i < ncols; ++i) {
        if (i == ts_col) continue;
        if (report.rows_read > 0 && numeric_count[i] == 0)
            throw Error("column " + header[i] + " is entirely non-numeric");
    }

    TimeSeriesTable table;
    for (std::size_t r = 0; r < stamps.size(); ++r)
        if (row_ok[r]) table.timestamps.push_back(stamps[r]);

    for (std::size_t i = 0; i < ncols; ++i) {
        if (i == ts_col) continue;
        Column col;
        col.name = header[i];
        if (opts.parse_country_prefix && has_country_prefix(col.name))
            col.country = col.name.substr(0, 2);
        col.values.reserve(table.timestamps.size());
        for (std::size_t r = 0; r < stamps.size(); ++r)
            if (row_ok[r]) col.values.push_back(raw[i][r]);
        table.columns.push_back(std::move(col));
    }
    report.columns_retained = table.columns.size();

    // Monotonicity is checked on the raw sequence so out-of-order input is
    // rejected even when the offending row would have been dropped.
    for (std::size_t i = 1; i < stamps.size(); ++i) {
        if (stamps[i] == stamps[i - 1]) throw Error("duplicate timestamps");
        if (stamps[i] < stamps[i - 1]) throw Error("non-monotone timestamps");
    }
    for (std::size_t i = 1; i < table.timestamps.size(); ++i)
        if (table.timestamps[i] - table.timestamps[i - 1] != 3600) ++report.gaps;
    if (opts.require_uniform && report.gaps > 0)
        throw Error("non-uniform hourly spacing: " + std::to_string(report.gaps) +
                    " gap(s)");

    table.validate();
    return {std::move(table), report};
}

void write_table(const TimeSeriesTable& table, const std::string& path,
                 char delimiter) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);

    out << "utc_timestamp";
    for (const auto& c : table.columns) out << delimiter << c.name;
    out << '\n';

    char buf[32];
    for (std::size_t r = 0; r < table.rows(); ++r) {
        out << format_iso8601_utc(table.timestamps[r]);
        for (const auto& c : table.columns) {
            std::snprintf(buf, sizeof(buf), "%.17g", c.values[r]);
            out << delimiter << buf;
        }
        out << '\n';
    }
    if (!out) throw Error("write failed: " + path);
}

}  // namespace thermobench
