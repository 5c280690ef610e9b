#include <algorithm>
#include <cmath>
#include <numeric>

#include "thermobench/baselines.hpp"
#include "thermobench/rng.hpp"

namespace thermobench {

namespace {

double gini(const std::vector<double>& counts, double total) {
    if (total <= 0) return 0.0;
    double s = 0.0;
    for (double c : counts) s += (c / total) * (c / total);
    return 1.0 - s;
}

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double child_impurity = 0.0;  // weighted
    bool found = false;
};

}  // namespace

void DecisionTree::do_fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                          std::uint64_t seed) {
    std::vector<int> rows(static_cast<std::size_t>(x.rows()));
    std::iota(rows.begin(), rows.end(), 0);
    fit_on(x, y, std::move(rows), seed);
}

void DecisionTree::fit_on(const Eigen::MatrixXd& x, const std::vector<int>& y,
                          std::vector<int> rows, std::uint64_t rng_key) {
    const int f = static_cast<int>(x.cols());
    const int c = n_classes_ ? n_classes_
                             : (*std::max_element(y.begin(), y.end()) + 1);
    n_classes_ = c;
    width_ = f;
    if (seen_.empty()) {
        seen_.assign(static_cast<std::size_t>(c), false);
        for (int label : y) seen_[static_cast<std::size_t>(label)] = true;
    }
    nodes_.clear();
    importance_ = Eigen::VectorXd::Zero(f);

    const int feats_per_split =
        hyper_.feats_per_split <= 0 || hyper_.feats_per_split > f
            ? f
            : hyper_.feats_per_split;
    CounterRng rng(rng_key);
    const double n_total = static_cast<double>(rows.size());

    std::vector<int> all_feats(static_cast<std::size_t>(f));
    std::iota(all_feats.begin(), all_feats.end(), 0);
    std::vector<std::pair<double, int>> sorted;  // (value, label), reused

    struct Pending {
        std::vector<int> rows;
        int depth;
        int slot;  // index into nodes_
    };
    std::vector<Pending> stack;
    nodes_.emplace_back();
    stack.push_back({std::move(rows), 0, 0});

    while (!stack.empty()) {
        Pending node = std::move(stack.back());
        stack.pop_back();
        const double m = static_cast<double>(node.rows.size());

        std::vector<double> counts(static_cast<std::size_t>(c), 0.0);
        for (int i : node.rows) counts[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])] += 1.0;
        const double node_gini = gini(counts, m);

        auto make_leaf = [&] {
            TreeNode& leaf = nodes_[static_cast<std::size_t>(node.slot)];
            leaf.feature = -1;
            leaf.probs.resize(static_cast<std::size_t>(c));
            for (int k = 0; k < c; ++k)
                leaf.probs[static_cast<std::size_t>(k)] = counts[static_cast<std::size_t>(k)] / m;
        };

        if (node.depth >= hyper_.max_depth || node_gini <= 0.0 ||
            node.rows.size() < 2 * static_cast<std::size_t>(hyper_.min_leaf)) {
            make_leaf();
            continue;
        }

        // candidate features: all, or a seeded subsample without replacement
        std::vector<int> feats;
        if (feats_per_split == f) {
            feats = all_feats;
        } else {
            std::vector<int> pool = all_feats;
            feats.reserve(static_cast<std::size_t>(feats_per_split));
            for (int t = 0; t < feats_per_split; ++t) {
                const std::size_t j =
                    static_cast<std::size_t>(rng.below(pool.size() - static_cast<std::size_t>(t))) + static_cast<std::size_t>(t);
                std::swap(pool[static_cast<std::size_t>(t)], pool[j]);
                feats.push_back(pool[static_cast<std::size_t>(t)]);
            }
        }

        SplitChoice best;
        std::vector<double> left_counts(static_cast<std::size_t>(c));
        for (int feat : feats) {
            sorted.clear();
            sorted.reserve(node.rows.size());
            for (int i : node.rows)
                sorted.emplace_back(x(i, feat), y[static_cast<std::size_t>(i)]);
            std::sort(sorted.begin(), sorted.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::fill(left_counts.begin(), left_counts.end(), 0.0);
            for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
                left_counts[static_cast<std::size_t>(sorted[i].second)] += 1.0;
                if (sorted[i].first == sorted[i + 1].first) continue;
                const double n_left = static_cast<double>(i + 1);
                const double n_right = m - n_left;
                if (n_left < hyper_.min_leaf || n_right < hyper_.min_leaf) continue;

                double sl = 0.0, sr = 0.0;
                for (int k = 0; k < c; ++k) {
                    const double lc = left_counts[static_cast<std::size_t>(k)];
                    const double rc = counts[static_cast<std::size_t>(k)] - lc;
                    sl += lc * lc;
                    sr += rc * rc;
                }
                const double weighted =
                    (n_left - sl / n_left + n_right - sr / n_right) / m;
                if (!best.found || weighted < best.child_impurity) {
                    best.found = true;
                    best.feature = feat;
                    best.threshold = 0.5 * (sorted[i].first + sorted[i + 1].first);
                    best.child_impurity = weighted;
                }
            }
        }

        if (!best.found || node_gini - best.child_impurity <= 1e-12) {
            make_leaf();
            continue;
        }

        importance_[best.feature] +=
            (m / n_total) * (node_gini - best.child_impurity);

        std::vector<int> left_rows, right_rows;
        for (int i : node.rows) {
            if (x(i, best.feature) <= best.threshold)
                left_rows.push_back(i);
            else
                right_rows.push_back(i);
        }

        TreeNode& split = nodes_[static_cast<std::size_t>(node.slot)];
        split.feature = best.feature;
        split.threshold = best.threshold;
        split.left = static_cast<int>(nodes_.size());
        split.right = static_cast<int>(nodes_.size() + 1);
        nodes_.emplace_back();
        nodes_.emplace_back();
        const int left_slot = split.left;
        const int right_slot = split.right;
        stack.push_back({std::move(right_rows), node.depth + 1, right_slot});
        stack.push_back({std::move(left_rows), node.depth + 1, left_slot});
    }
}

Eigen::MatrixXd DecisionTree::predict_proba(const Eigen::MatrixXd& x) const {
    check_width(x);
    Eigen::MatrixXd proba(x.rows(), n_classes_);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        int node = 0;
        while (nodes_[static_cast<std::size_t>(node)].feature >= 0) {
            const TreeNode& nd = nodes_[static_cast<std::size_t>(node)];
            node = x(i, nd.feature) <= nd.threshold ? nd.left : nd.right;
        }
        const auto& probs = nodes_[static_cast<std::size_t>(node)].probs;
        for (int k = 0; k < n_classes_; ++k)
            proba(i, k) = probs[static_cast<std::size_t>(k)];
    }
    return proba;
}

long DecisionTree::parameter_count() const {
    long total = 0;
    for (const auto& nd : nodes_)
        total += nd.feature >= 0 ? 2 : static_cast<long>(nd.probs.size());
    return total;
}

// ---------------------------------------------------------------- forest

void RandomForest::do_fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                          std::uint64_t seed) {
    if (hyper_.trees < 1) throw Error("forest: tree count must be >= 1");
    const int f = static_cast<int>(x.cols());
    int feats = hyper_.feats_per_split;
    if (feats < 0)
        feats = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(f)))));

    trees_.clear();
    trees_.reserve(static_cast<std::size_t>(hyper_.trees));
    const auto n = static_cast<std::size_t>(x.rows());

    for (int t = 0; t < hyper_.trees; ++t) {
        const std::uint64_t tree_key =
            CounterRng::derive(seed, static_cast<std::uint64_t>(t));
        std::vector<int> rows;
        rows.reserve(n);
        if (hyper_.bootstrap) {
            CounterRng boot(CounterRng::derive(tree_key, 0x626f6f74ULL));
            for (std::size_t i = 0; i < n; ++i)
                rows.push_back(static_cast<int>(boot.below(n)));
        } else {
            rows.resize(n);
            std::iota(rows.begin(), rows.end(), 0);
        }
        DecisionTree tree(TreeHyper{hyper_.max_depth, hyper_.min_leaf, feats});
        tree.n_classes_ = n_classes_;
        tree.seen_ = seen_;
        tree.fit_on(x, y, std::move(rows), tree_key);
        trees_.push_back(std::move(tree));
    }
}

Eigen::MatrixXd RandomForest::predict_proba(const Eigen::MatrixXd& x) const {
    check_width(x);
    Eigen::MatrixXd proba = Eigen::MatrixXd::Zero(x.rows(), n_classes_);
    for (const auto& tree : trees_) proba += tree.predict_proba(x);
    proba /= static_cast<double>(trees_.size());
    return proba;
}

Eigen::VectorXd RandomForest::feature_importance() const {
    Eigen::VectorXd total = Eigen::VectorXd::Zero(width_);
    for (const auto& tree : trees_) total += tree.impurity_decrease();
    total /= static_cast<double>(trees_.size());
    const double s = total.sum();
    if (s > 0) total /= s;
    return total;
}

long RandomForest::parameter_count() const {
    long total = 0;
    for (const auto& tree : trees_) total += tree.parameter_count();
    return total;
}

}  // namespace thermobench
