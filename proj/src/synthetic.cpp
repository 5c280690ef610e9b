#include "thermobench/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thermobench/civil_time.hpp"
#include "thermobench/rng.hpp"

namespace thermobench {

namespace {

constexpr const char* kCodes[] = {
    "AT", "BE", "BG", "CH", "CZ", "DE", "DK", "EE", "ES", "FI",
    "FR", "GB", "GR", "HR", "HU", "IE", "IT", "LT", "LU", "LV",
    "NL", "NO", "PL", "PT", "RO", "SE", "SI", "SK"};
constexpr int kMaxCountries = static_cast<int>(std::size(kCodes));

}  // namespace

std::vector<std::string> synthetic_country_codes(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(kCodes[i % kMaxCountries] +
                                              (i < kMaxCountries ? "" : std::to_string(i / kMaxCountries)));
    return out;
}

void SyntheticConfig::validate() const {
    if (end_year < start_year) throw Error("synthetic: end year < start year");
    if (countries < 1) throw Error("synthetic: countries must be >= 1");
    if (countries > kMaxCountries)
        throw Error("synthetic: at most " + std::to_string(kMaxCountries) +
                    " countries supported");
    if (base_mw < 0 || seasonal_mw < 0 || diurnal_mw < 0 || noise_mw < 0)
        throw Error("synthetic: amplitudes must be >= 0");
    if (t_source_amp_k < 0) throw Error("synthetic: t_source amplitude must be >= 0");
    if (t_sink_k <= t_source_mean_k + t_source_amp_k)
        throw Error("synthetic: t_sink must exceed the maximum source temperature");
}

TimeSeriesTable generate_synthetic(const SyntheticConfig& config) {
    config.validate();
    constexpr double two_pi = 2.0 * std::numbers::pi;

    const std::int64_t t0 = days_from_civil(config.start_year, 1, 1) * 86400;
    const std::int64_t t1 = days_from_civil(config.end_year + 1, 1, 1) * 86400;
    const std::size_t hours = static_cast<std::size_t>((t1 - t0) / 3600);

    TimeSeriesTable table;
    table.timestamps.resize(hours);
    for (std::size_t h = 0; h < hours; ++h)
        table.timestamps[h] = t0 + static_cast<std::int64_t>(h) * 3600;

    // Seasonal/diurnal phases depend only on the calendar position.
    std::vector<double> season(hours), diurnal(hours);
    for (std::size_t h = 0; h < hours; ++h) {
        const std::int64_t ts = table.timestamps[h];
        season[h] = std::cos(two_pi * utc_day_of_year(ts) / 365.25);
        diurnal[h] = std::cos(two_pi * utc_hour(ts) / 24.0);
    }

    const auto codes = synthetic_country_codes(config.countries);
    for (int c = 0; c < config.countries; ++c) {
        CounterRng rng(CounterRng::derive(config.seed, static_cast<std::uint64_t>(c)));
        const double efficiency = rng.uniform(0.3, 0.8);

        Column demand{codes[c] + "_heat_demand", {}, Unit::MW, codes[c]};
        Column t_source{codes[c] + "_t_source", {}, Unit::Kelvin, codes[c]};
        Column t_sink{codes[c] + "_t_sink", {}, Unit::Kelvin, codes[c]};
        Column cop{codes[c] + "_cop", {}, Unit::Dimensionless, codes[c]};
        Column power{codes[c] + "_power_input", {}, Unit::MW, codes[c]};
        demand.values.resize(hours);
        t_source.values.resize(hours);
        t_sink.values.resize(hours);
        cop.values.resize(hours);
        power.values.resize(hours);

        for (std::size_t h = 0; h < hours; ++h) {
            const double noise = config.noise_mw * rng.next_gaussian();
            const double d = std::max(
                0.0, config.base_mw + config.seasonal_mw * season[h] +
                         config.diurnal_mw * diurnal[h] + noise);
            const double src = config.t_source_mean_k + config.t_source_amp_k * season[h];
            const double carnot = config.t_sink_k / (config.t_sink_k - src);
            const double c_op = efficiency * carnot;
            demand.values[h] = d;
            t_source.values[h] = src;
            t_sink.values[h] = config.t_sink_k;
            cop.values[h] = c_op;
            power.values[h] = d / c_op;
        }
        table.columns.push_back(std::move(demand));
        table.columns.push_back(std::move(t_source));
        table.columns.push_back(std::move(t_sink));
        table.columns.push_back(std::move(cop));
        table.columns.push_back(std::move(power));
    }

    table.validate();
    return table;
}

}  // namespace thermobench
