#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "thermobench/timeseries.hpp"

namespace thermobench {

// Inclusive year ranges; must be disjoint and ordered train < val < test.
struct SplitSpec {
    int train_lo = 2008, train_hi = 2018;
    int val_lo = 2019, val_hi = 2020;
    int test_lo = 2021, test_hi = 2022;

    void validate() const;
};

struct SplitIndices {
    std::vector<std::size_t> train, val, test;
};

// Partitions rows by calendar year (UTC). Rows outside all ranges are
// excluded. Throws Error("empty split: ...") when any set comes out empty.
SplitIndices temporal_split(std::span<const std::int64_t> timestamps,
                            const SplitSpec& spec);
SplitIndices temporal_split(const TimeSeriesTable& table, const SplitSpec& spec);

// Z-score statistics fitted on training rows only. Zero-variance columns are
// dropped and reported, not scaled.
struct NormStats {
    Eigen::VectorXd mean;              // over retained columns
    Eigen::VectorXd std;               // population std, > 0
    std::vector<int> kept;             // indices into the original columns
    std::vector<std::string> dropped;  // names of zero-variance columns
};

NormStats fit_normalizer(const Eigen::MatrixXd& train_rows,
                         const std::vector<std::string>& names);
Eigen::MatrixXd apply_normalizer(const NormStats& stats,
                                 const Eigen::MatrixXd& rows);

// Linear interpolation between order statistics at fractional rank p*(n-1).
// The single quantile convention shared by every quantile consumer here.
double quantile(std::vector<double> values, double p);

// Indices with value inside [Q1 - factor*IQR, Q3 + factor*IQR].
std::vector<std::size_t> iqr_filter(std::span<const double> values,
                                    double factor = 1.5);

struct StressThresholds {
    double q25, q50, q75;
};

// Quartiles of the (training-split) heat demand series.
StressThresholds compute_stress_thresholds(std::span<const double> train_demand);

// 0: v <= q25, 1: q25 < v <= q50, 2: q50 < v <= q75, 3: v > q75.
// Boundary values belong to the lower class.
int assign_stress_label(double v, const StressThresholds& thr);
std::vector<int> assign_stress_labels(std::span<const double> values,
                                      const StressThresholds& thr);

}  // namespace thermobench
