#pragma once

#include <cstdint>
#include <vector>

#include "thermobench/timeseries.hpp"

namespace thermobench {

// Desk-scale stand-in for the public dataset: per country, hourly heat
// demand with seasonal/diurnal structure plus noise, a seasonal source
// temperature, a constant sink temperature, a COP at a fixed per-country
// fraction of the Carnot bound, and the implied electrical power draw.
struct SyntheticConfig {
    int start_year = 2018;
    int end_year = 2022;
    int countries = 3;
    double base_mw = 40.0;
    double seasonal_mw = 25.0;   // annual cosine amplitude
    double diurnal_mw = 8.0;     // daily cosine amplitude
    double noise_mw = 6.0;       // gaussian std
    double t_sink_k = 333.15;
    double t_source_mean_k = 283.15;
    double t_source_amp_k = 10.0;
    std::uint64_t seed = 1;

    void validate() const;
};

// Column names are "<CC>_<variable>" with CC from a fixed country-code list,
// so the output round-trips through load_table with country tags intact.
// Deterministic: a given config yields a bit-identical table everywhere.
TimeSeriesTable generate_synthetic(const SyntheticConfig& config);

// First `n` codes used by the generator ("AT", "BE", ...).
std::vector<std::string> synthetic_country_codes(int n);

}  // namespace thermobench
