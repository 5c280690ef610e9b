#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "thermobench/baselines.hpp"
#include "thermobench/physics.hpp"
#include "thermobench/timeseries.hpp"

namespace thermobench {

enum class FeatureTag { Raw, Differential, Degradation, Temporal, Geographic };

std::string feature_tag_name(FeatureTag t);

struct FeatureMatrix {
    std::vector<std::string> names;
    std::vector<FeatureTag> tags;
    Eigen::MatrixXd data;  // rows x features

    Eigen::Index rows() const { return data.rows(); }
    Eigen::Index cols() const { return data.cols(); }
    void validate() const;  // unique names, finite values, shape consistency
};

// Per-country column suffixes. For tagged tables the column "AT_cop" is the
// "cop" role of country AT; untagged tables use the suffix as the full name.
struct ColumnRoles {
    std::string heat_demand = "heat_demand";
    std::string cop = "cop";
    std::string t_source = "t_source";
    std::string t_sink = "t_sink";
    std::string power_input = "power_input";
    // The labeling target trivially determines its own quartile class, so it
    // (and power input, which encodes it through the COP) stays out of the
    // feature set unless explicitly requested.
    bool include_target_as_feature = false;
    bool include_power_as_feature = false;
};

// One sample per (timestamp, country): engineered features, the labeling
// target, and thermodynamic signals when the table carries temperatures.
struct AssembledDataset {
    FeatureMatrix features;
    std::vector<double> target;  // heat demand per sample
    std::vector<std::int64_t> timestamps;
    std::vector<std::string> countries;  // per sample; empty for untagged
    std::optional<PhysicsSignals> signals;
    std::size_t table_rows = 0;
    std::size_t raw_columns = 0;  // table columns feeding the matrix
};

AssembledDataset engineer_features(const TimeSeriesTable& table,
                                   const ColumnRoles& roles);

// Plug-in estimate from the joint histogram of the equal-width-binned
// feature and the class label, in bits. A constant feature scores 0.
double mutual_information(std::span<const double> feature,
                          std::span<const int> labels, int bins = 16);

// Elimination-order ranking: repeatedly fit the multinomial logistic
// baseline and drop the `step` features with the smallest class-weight
// column norm. Last survivor gets rank 1.
std::vector<int> recursive_elimination(const Eigen::MatrixXd& x,
                                       const std::vector<int>& y, int step = 1,
                                       const LogRegHyper& inner = {});

struct SelectionOptions {
    int mi_bins = 16;
    int rfe_step = 1;
    LogRegHyper rfe_logreg;
    ForestHyper forest{50, 12, 5, -1, true};  // importance source
};

struct SelectionResult {
    std::vector<int> mi_rank;      // permutations of 1..F
    std::vector<int> forest_rank;
    std::vector<int> rfe_rank;
    std::vector<double> aggregate;  // mean of the three ranks
    std::vector<int> selected;      // k smallest aggregates, index tie-break
    std::vector<double> mi_bits;
    std::vector<double> forest_importance;
};

// Ranks from the three methods, Borda-aggregated; deterministic given seed.
SelectionResult select_features(const Eigen::MatrixXd& x,
                                const std::vector<int>& y, int k,
                                const SelectionOptions& opts, std::uint64_t seed);

// Borda aggregation alone (exposed for direct use on precomputed ranks).
SelectionResult aggregate_selection(const std::vector<int>& mi_rank,
                                    const std::vector<int>& forest_rank,
                                    const std::vector<int>& rfe_rank, int k);

}  // namespace thermobench
