#include "thermobench/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "thermobench/civil_time.hpp"
#include "thermobench/rng.hpp"

namespace thermobench {

std::string feature_tag_name(FeatureTag t) {
    switch (t) {
        case FeatureTag::Raw: return "raw";
        case FeatureTag::Differential: return "differential";
        case FeatureTag::Degradation: return "degradation";
        case FeatureTag::Temporal: return "temporal";
        case FeatureTag::Geographic: return "geographic";
    }
    return "raw";
}

void FeatureMatrix::validate() const {
    if (names.size() != static_cast<std::size_t>(data.cols()) ||
        tags.size() != names.size())
        throw Error("feature matrix: name/tag/column count mismatch");
    std::set<std::string> unique(names.begin(), names.end());
    if (unique.size() != names.size())
        throw Error("feature matrix: duplicate feature names");
    if (!data.allFinite())
        throw Error("feature matrix: non-finite values");
}

namespace {

struct RoleColumns {
    const Column* demand = nullptr;
    const Column* cop = nullptr;
    const Column* t_source = nullptr;
    const Column* t_sink = nullptr;
    const Column* power = nullptr;
};

RoleColumns find_roles(const TimeSeriesTable& table, const ColumnRoles& roles,
                       const std::string& country) {
    auto get = [&](const std::string& suffix) -> const Column* {
        const std::string name =
            country.empty() ? suffix : country + "_" + suffix;
        return table.find_column(name);
    };
    RoleColumns rc;
    rc.demand = get(roles.heat_demand);
    rc.cop = get(roles.cop);
    rc.t_source = get(roles.t_source);
    rc.t_sink = get(roles.t_sink);
    rc.power = get(roles.power_input);
    return rc;
}

}  // namespace

AssembledDataset engineer_features(const TimeSeriesTable& table,
                                   const ColumnRoles& roles) {
    // distinct country tags in sorted order; untagged tables form one group
    std::set<std::string> tag_set;
    for (const auto& col : table.columns)
        if (!col.country.empty()) tag_set.insert(col.country);
    std::vector<std::string> countries(tag_set.begin(), tag_set.end());
    const bool tagged = !countries.empty();
    if (!tagged) countries.push_back("");

    const std::size_t rows = table.rows();
    const std::size_t samples = rows * countries.size();

    // role availability must be uniform across countries
    std::vector<RoleColumns> rc;
    for (const auto& country : countries) {
        rc.push_back(find_roles(table, roles, country));
        if (!rc.back().demand)
            throw Error("engineer_features: no heat demand column for '" +
                        country + "'");
        if ((rc[0].cop == nullptr) != (rc.back().cop == nullptr) ||
            (rc[0].t_source == nullptr) != (rc.back().t_source == nullptr) ||
            (rc[0].t_sink == nullptr) != (rc.back().t_sink == nullptr) ||
            (rc[0].power == nullptr) != (rc.back().power == nullptr))
            throw Error("engineer_features: role columns differ across countries");
    }
    const bool have_cop = rc[0].cop != nullptr;
    const bool have_temps = rc[0].t_source && rc[0].t_sink;
    const bool have_power = rc[0].power != nullptr;

    AssembledDataset ds;
    ds.table_rows = rows;

    std::vector<std::string> names;
    std::vector<FeatureTag> tags;
    auto add = [&](const std::string& n, FeatureTag t) {
        names.push_back(n);
        tags.push_back(t);
    };
    if (roles.include_target_as_feature) add(roles.heat_demand, FeatureTag::Raw);
    if (have_cop) add(roles.cop, FeatureTag::Raw);
    if (have_temps) {
        add(roles.t_source, FeatureTag::Raw);
        add(roles.t_sink, FeatureTag::Raw);
    }
    if (have_power && roles.include_power_as_feature)
        add(roles.power_input, FeatureTag::Raw);
    ds.raw_columns = names.size() + (roles.include_target_as_feature ? 0 : 1);
    if (have_temps) add("temp_diff", FeatureTag::Differential);
    if (have_temps && have_cop) add("cop_degradation", FeatureTag::Degradation);
    add("hour_sin", FeatureTag::Temporal);
    add("hour_cos", FeatureTag::Temporal);
    add("doy_sin", FeatureTag::Temporal);
    add("doy_cos", FeatureTag::Temporal);
    if (tagged)
        for (const auto& country : countries)
            add("country_" + country, FeatureTag::Geographic);

    const auto f = static_cast<Eigen::Index>(names.size());
    Eigen::MatrixXd data(static_cast<Eigen::Index>(samples), f);

    ds.target.resize(samples);
    ds.timestamps.resize(samples);
    ds.countries.resize(samples);

    // temporal basis shared by all countries
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> hour_sin(rows), hour_cos(rows), doy_sin(rows), doy_cos(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const double hour_phase = two_pi * utc_hour(table.timestamps[r]) / 24.0;
        const double doy_phase =
            two_pi * utc_day_of_year(table.timestamps[r]) / 365.25;
        hour_sin[r] = std::sin(hour_phase);
        hour_cos[r] = std::cos(hour_phase);
        doy_sin[r] = std::sin(doy_phase);
        doy_cos[r] = std::cos(doy_phase);
    }

    const bool signals_available = have_temps && (have_power || have_cop);
    Eigen::VectorXd sig_sink, sig_source, sig_heat, sig_power;
    if (signals_available) {
        sig_sink.resize(static_cast<Eigen::Index>(samples));
        sig_source.resize(static_cast<Eigen::Index>(samples));
        sig_heat.resize(static_cast<Eigen::Index>(samples));
        sig_power.resize(static_cast<Eigen::Index>(samples));
    }

    std::size_t s = 0;
    for (std::size_t ci = 0; ci < countries.size(); ++ci) {
        const RoleColumns& cols = rc[ci];
        for (std::size_t r = 0; r < rows; ++r, ++s) {
            const auto row = static_cast<Eigen::Index>(s);
            Eigen::Index j = 0;
            const double demand = cols.demand->values[r];
            if (roles.include_target_as_feature) data(row, j++) = demand;
            if (have_cop) data(row, j++) = cols.cop->values[r];
            if (have_temps) {
                data(row, j++) = cols.t_source->values[r];
                data(row, j++) = cols.t_sink->values[r];
            }
            if (have_power && roles.include_power_as_feature)
                data(row, j++) = cols.power->values[r];
            if (have_temps) {
                const double sink = cols.t_sink->values[r];
                const double source = cols.t_source->values[r];
                data(row, j++) = sink - source;
                if (have_cop)
                    data(row, j++) =
                        cols.cop->values[r] / carnot_cop(sink, source);
            }
            data(row, j++) = hour_sin[r];
            data(row, j++) = hour_cos[r];
            data(row, j++) = doy_sin[r];
            data(row, j++) = doy_cos[r];
            if (tagged)
                for (std::size_t k = 0; k < countries.size(); ++k)
                    data(row, j++) = k == ci ? 1.0 : 0.0;

            ds.target[s] = demand;
            ds.timestamps[s] = table.timestamps[r];
            ds.countries[s] = countries[ci];
            if (signals_available) {
                sig_sink[row] = cols.t_sink->values[r];
                sig_source[row] = cols.t_source->values[r];
                sig_heat[row] = demand;
                sig_power[row] = have_power
                                     ? cols.power->values[r]
                                     : demand / cols.cop->values[r];
            }
        }
    }

    ds.features.names = std::move(names);
    ds.features.tags = std::move(tags);
    ds.features.data = std::move(data);
    ds.features.validate();
    if (signals_available)
        ds.signals = PhysicsSignals::from_columns(
            std::move(sig_sink), std::move(sig_source), std::move(sig_heat),
            std::move(sig_power));
    return ds;
}

double mutual_information(std::span<const double> feature,
                          std::span<const int> labels, int bins) {
    if (feature.size() != labels.size())
        throw Error("mutual_information: length mismatch");
    if (feature.empty()) throw Error("mutual_information: empty series");
    if (bins < 2) throw Error("mutual_information: bins must be >= 2");

    const auto [lo_it, hi_it] = std::minmax_element(feature.begin(), feature.end());
    const double lo = *lo_it, hi = *hi_it;
    if (lo == hi) return 0.0;

    const int c = *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<double> joint(static_cast<std::size_t>(bins) * static_cast<std::size_t>(c), 0.0);
    std::vector<double> pb(static_cast<std::size_t>(bins), 0.0);
    std::vector<double> pc(static_cast<std::size_t>(c), 0.0);

    const double scale = static_cast<double>(bins) / (hi - lo);
    const double inv_n = 1.0 / static_cast<double>(feature.size());
    for (std::size_t i = 0; i < feature.size(); ++i) {
        int b = static_cast<int>((feature[i] - lo) * scale);
        if (b >= bins) b = bins - 1;  // the maximum lands in the last bin
        joint[static_cast<std::size_t>(b) * static_cast<std::size_t>(c) +
              static_cast<std::size_t>(labels[i])] += inv_n;
        pb[static_cast<std::size_t>(b)] += inv_n;
        pc[static_cast<std::size_t>(labels[i])] += inv_n;
    }

    double mi = 0.0;
    for (int b = 0; b < bins; ++b)
        for (int k = 0; k < c; ++k) {
            const double p = joint[static_cast<std::size_t>(b) * static_cast<std::size_t>(c) +
                                   static_cast<std::size_t>(k)];
            if (p > 0)
                mi += p * std::log2(p / (pb[static_cast<std::size_t>(b)] *
                                         pc[static_cast<std::size_t>(k)]));
        }
    return std::max(0.0, mi);
}

namespace {

// Scores to ranks: rank 1 = highest score; ties resolved by lower index.
std::vector<int> ranks_from_scores(const std::vector<double>& scores) {
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
    });
    std::vector<int> rank(scores.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        rank[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos) + 1;
    return rank;
}

}  // namespace

std::vector<int> recursive_elimination(const Eigen::MatrixXd& x,
                                       const std::vector<int>& y, int step,
                                       const LogRegHyper& inner) {
    const int f = static_cast<int>(x.cols());
    if (f < 2) throw Error("recursive_elimination: need at least 2 features");
    if (step < 1) throw Error("recursive_elimination: step must be >= 1");
    const int n_classes = *std::max_element(y.begin(), y.end()) + 1;

    std::vector<int> remaining(static_cast<std::size_t>(f));
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<int> rank(static_cast<std::size_t>(f), 0);
    int next_rank = f;  // weakest eliminated first, counts down to 1

    while (remaining.size() > 1) {
        Eigen::MatrixXd sub(x.rows(), static_cast<Eigen::Index>(remaining.size()));
        for (std::size_t j = 0; j < remaining.size(); ++j)
            sub.col(static_cast<Eigen::Index>(j)) = x.col(remaining[j]);

        LogisticRegression model(inner);
        model.fit(sub, y, n_classes, 0);

        std::vector<std::pair<double, std::size_t>> norms;  // (norm, pos)
        for (std::size_t j = 0; j < remaining.size(); ++j)
            norms.emplace_back(model.weights().row(static_cast<Eigen::Index>(j)).norm(), j);
        std::sort(norms.begin(), norms.end());

        const int drop = std::min<int>(step, static_cast<int>(remaining.size()) - 1);
        std::vector<std::size_t> dropped_pos;
        for (int d = 0; d < drop; ++d) dropped_pos.push_back(norms[static_cast<std::size_t>(d)].second);
        std::sort(dropped_pos.begin(), dropped_pos.end(), std::greater<>());

        // among a batch the smallest norm gets the worst (largest) rank
        std::vector<std::pair<double, std::size_t>> batch(norms.begin(),
                                                          norms.begin() + drop);
        std::sort(batch.begin(), batch.end());
        for (const auto& [norm, pos] : batch)
            rank[static_cast<std::size_t>(remaining[pos])] = next_rank--;
        for (std::size_t pos : dropped_pos)
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pos));
    }
    rank[static_cast<std::size_t>(remaining[0])] = 1;
    return rank;
}

SelectionResult aggregate_selection(const std::vector<int>& mi_rank,
                                    const std::vector<int>& forest_rank,
                                    const std::vector<int>& rfe_rank, int k) {
    const std::size_t f = mi_rank.size();
    if (forest_rank.size() != f || rfe_rank.size() != f)
        throw Error("aggregate_selection: rank vector length mismatch");
    if (k < 1 || static_cast<std::size_t>(k) > f)
        throw Error("aggregate_selection: k out of range");

    SelectionResult res;
    res.mi_rank = mi_rank;
    res.forest_rank = forest_rank;
    res.rfe_rank = rfe_rank;
    res.aggregate.resize(f);
    for (std::size_t j = 0; j < f; ++j)
        res.aggregate[j] =
            (mi_rank[j] + forest_rank[j] + rfe_rank[j]) / 3.0;

    std::vector<int> order(f);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return res.aggregate[static_cast<std::size_t>(a)] <
               res.aggregate[static_cast<std::size_t>(b)];
    });
    res.selected.assign(order.begin(), order.begin() + k);
    std::sort(res.selected.begin(), res.selected.end());
    return res;
}

SelectionResult select_features(const Eigen::MatrixXd& x,
                                const std::vector<int>& y, int k,
                                const SelectionOptions& opts,
                                std::uint64_t seed) {
    const int f = static_cast<int>(x.cols());
    if (f < 1) throw Error("select_features: no features");
    k = std::min(k, f);
    const int n_classes = *std::max_element(y.begin(), y.end()) + 1;

    std::vector<double> mi(static_cast<std::size_t>(f));
    for (int j = 0; j < f; ++j)
        mi[static_cast<std::size_t>(j)] = mutual_information(
            std::span<const double>(x.col(j).data(), static_cast<std::size_t>(x.rows())),
            y, opts.mi_bins);

    RandomForest forest(opts.forest);
    forest.fit(x, y, n_classes, seed);
    const Eigen::VectorXd imp = forest.feature_importance();
    std::vector<double> importance(imp.data(), imp.data() + imp.size());

    std::vector<int> rfe_rank;
    if (f >= 2) {
        rfe_rank = recursive_elimination(x, y, opts.rfe_step, opts.rfe_logreg);
    } else {
        rfe_rank = {1};
    }

    SelectionResult res = aggregate_selection(
        ranks_from_scores(mi), ranks_from_scores(importance), rfe_rank, k);
    res.mi_bits = std::move(mi);
    res.forest_importance = std::move(importance);
    return res;
}

}  // namespace thermobench
