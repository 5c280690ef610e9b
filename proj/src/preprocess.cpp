#include "thermobench/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "thermobench/civil_time.hpp"

namespace thermobench {

void SplitSpec::validate() const {
    if (train_lo > train_hi || val_lo > val_hi || test_lo > test_hi)
        throw Error("split: each range must have lo <= hi");
    if (train_hi >= val_lo || val_hi >= test_lo)
        throw Error("split: ranges must be disjoint and ordered train < val < test");
}

SplitIndices temporal_split(std::span<const std::int64_t> timestamps,
                            const SplitSpec& spec) {
    spec.validate();
    SplitIndices out;
    for (std::size_t i = 0; i < timestamps.size(); ++i) {
        const int y = utc_year(timestamps[i]);
        if (y >= spec.train_lo && y <= spec.train_hi)
            out.train.push_back(i);
        else if (y >= spec.val_lo && y <= spec.val_hi)
            out.val.push_back(i);
        else if (y >= spec.test_lo && y <= spec.test_hi)
            out.test.push_back(i);
    }
    if (out.train.empty()) throw Error("empty split: train");
    if (out.val.empty()) throw Error("empty split: val");
    if (out.test.empty()) throw Error("empty split: test");
    return out;
}

SplitIndices temporal_split(const TimeSeriesTable& table, const SplitSpec& spec) {
    return temporal_split(std::span<const std::int64_t>(table.timestamps), spec);
}

NormStats fit_normalizer(const Eigen::MatrixXd& train_rows,
                         const std::vector<std::string>& names) {
    const Eigen::Index n = train_rows.rows();
    const Eigen::Index f = train_rows.cols();
    if (n < 2) throw Error("normalizer: need at least 2 training rows");
    if (names.size() != static_cast<std::size_t>(f))
        throw Error("normalizer: name count != column count");

    NormStats stats;
    std::vector<double> means, stds;
    for (Eigen::Index j = 0; j < f; ++j) {
        const double mean = train_rows.col(j).mean();
        const double var =
            (train_rows.col(j).array() - mean).square().sum() / static_cast<double>(n);
        const double sd = std::sqrt(var);
        if (sd > 0.0) {
            stats.kept.push_back(static_cast<int>(j));
            means.push_back(mean);
            stds.push_back(sd);
        } else {
            stats.dropped.push_back(names[static_cast<std::size_t>(j)]);
        }
    }
    stats.mean = Eigen::Map<Eigen::VectorXd>(means.data(), static_cast<Eigen::Index>(means.size()));
    stats.std = Eigen::Map<Eigen::VectorXd>(stds.data(), static_cast<Eigen::Index>(stds.size()));
    return stats;
}

Eigen::MatrixXd apply_normalizer(const NormStats& stats, const Eigen::MatrixXd& rows) {
    Eigen::MatrixXd out(rows.rows(), static_cast<Eigen::Index>(stats.kept.size()));
    for (std::size_t k = 0; k < stats.kept.size(); ++k) {
        const Eigen::Index j = stats.kept[k];
        out.col(static_cast<Eigen::Index>(k)) =
            (rows.col(j).array() - stats.mean[static_cast<Eigen::Index>(k)]) /
            stats.std[static_cast<Eigen::Index>(k)];
    }
    return out;
}

double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw Error("quantile of empty series");
    std::sort(values.begin(), values.end());
    const double h = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::vector<std::size_t> iqr_filter(std::span<const double> values, double factor) {
    if (values.size() < 4) throw Error("iqr_filter: need at least 4 values");
    std::vector<double> sorted(values.begin(), values.end());
    const double q1 = quantile(sorted, 0.25);
    const double q3 = quantile(sorted, 0.75);
    const double iqr = q3 - q1;
    const double lo = q1 - factor * iqr;
    const double hi = q3 + factor * iqr;
    std::vector<std::size_t> kept;
    kept.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] >= lo && values[i] <= hi) kept.push_back(i);
    return kept;
}

StressThresholds compute_stress_thresholds(std::span<const double> train_demand) {
    if (train_demand.size() < 4)
        throw Error("stress thresholds: need at least 4 values");
    std::vector<double> v(train_demand.begin(), train_demand.end());
    return {quantile(v, 0.25), quantile(v, 0.50), quantile(v, 0.75)};
}

int assign_stress_label(double v, const StressThresholds& thr) {
    if (v <= thr.q25) return 0;
    if (v <= thr.q50) return 1;
    if (v <= thr.q75) return 2;
    return 3;
}

std::vector<int> assign_stress_labels(std::span<const double> values,
                                      const StressThresholds& thr) {
    if (!(thr.q25 <= thr.q50 && thr.q50 <= thr.q75))
        throw Error("stress thresholds out of order");
    std::vector<int> labels(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        labels[i] = assign_stress_label(values[i], thr);
    return labels;
}

}  // namespace thermobench
