#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "thermobench/timeseries.hpp"

namespace thermobench {

struct LogRegHyper {
    double lr = 0.1;
    int epochs = 500;
    double l2 = 1e-4;
};

struct KnnHyper {
    int k = 15;
};

struct TreeHyper {
    int max_depth = 12;
    int min_leaf = 5;
    int feats_per_split = 0;  // 0 = all features
};

struct ForestHyper {
    int trees = 100;
    int max_depth = 12;
    int min_leaf = 5;
    int feats_per_split = -1;  // -1 = round(sqrt(F)), 0 = all
    bool bootstrap = true;
};

struct SvmHyper {
    double c = 1.0;
    int epochs = 50;
};

struct BaselineHypers {
    LogRegHyper logreg;
    KnnHyper knn;
    TreeHyper tree;
    ForestHyper forest;
    SvmHyper linsvm;
};

struct ClassifierIo;

// Common surface for the classical models. fit() times the training call;
// predictions are restricted to classes seen during training, with
// probability mass on unseen classes zeroed and rows renormalized.
class Classifier {
public:
    virtual ~Classifier() = default;

    virtual std::string kind() const = 0;

    void fit(const Eigen::MatrixXd& x, const std::vector<int>& y, int n_classes,
             std::uint64_t seed);

    virtual Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& x) const = 0;

    // Argmax with smallest-index tie-break. Kinds with a richer tie rule
    // (knn) override predict_both; the default derives labels from probas.
    std::vector<int> predict(const Eigen::MatrixXd& x) const;
    virtual std::pair<std::vector<int>, Eigen::MatrixXd> predict_both(
        const Eigen::MatrixXd& x) const;

    // Stored-state size in scalars; bubble-size proxy in the reports.
    virtual long parameter_count() const = 0;

    double train_seconds() const { return train_seconds_; }
    int n_classes() const { return n_classes_; }
    int feature_width() const { return width_; }
    const std::vector<bool>& seen() const { return seen_; }

protected:
    friend struct ClassifierIo;

    virtual void do_fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                        std::uint64_t seed) = 0;

    void check_width(const Eigen::MatrixXd& x) const;
    Eigen::MatrixXd mask_unseen(Eigen::MatrixXd proba) const;

    int n_classes_ = 0;
    int width_ = 0;
    std::vector<bool> seen_;
    double train_seconds_ = 0.0;
};

// kind: logreg | gnb | knn | tree | forest | linsvm | majority | random
std::unique_ptr<Classifier> make_classifier(const std::string& kind,
                                            const BaselineHypers& hypers = {});

// Weighted average of member probability rows, renormalized; labels by
// argmax with smallest-index tie-break. Weights default to uniform.
std::pair<std::vector<int>, Eigen::MatrixXd> soft_vote(
    const std::vector<Eigen::MatrixXd>& member_probas,
    std::vector<double> weights = {});

std::unique_ptr<Classifier> majority_baseline(const std::vector<int>& train_labels,
                                              int n_classes);
std::unique_ptr<Classifier> random_baseline(std::uint64_t seed, int n_classes);

// Checkpoints: JSON blob with a kind tag; loaders reject malformed state.
void save_classifier(const Classifier& c, const std::string& path);
std::unique_ptr<Classifier> load_classifier(const std::string& path);

// --- concrete kinds exposed for direct use (selection machinery, tests) ---

class LogisticRegression : public Classifier {
public:
    explicit LogisticRegression(LogRegHyper hyper = {}) : hyper_(hyper) {}
    std::string kind() const override { return "logreg"; }
    Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& x) const override;
    long parameter_count() const override;

    // Feature x class weight matrix (bias excluded); recursive feature
    // elimination scores features by the row norms of this.
    const Eigen::MatrixXd& weights() const { return w_; }

protected:
    friend struct ClassifierIo;
    void do_fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                std::uint64_t seed) override;

    LogRegHyper hyper_;
    Eigen::MatrixXd w_;
    Eigen::RowVectorXd b_;
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<double> probs;  // leaf class distribution
};

class DecisionTree : public Classifier {
public:
    explicit DecisionTree(TreeHyper hyper = {}) : hyper_(hyper) {}
    std::string kind() const override { return "tree"; }
    Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& x) const override;
    long parameter_count() const override;

    // Fits on a caller-supplied row multiset (bootstrap support); rng is
    // only consumed when feats_per_split < F.
    void fit_on(const Eigen::MatrixXd& x, const std::vector<int>& y,
                std::vector<int> rows, std::uint64_t rng_key);

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    // Per-feature Gini decrease, weighted by node sample share; unnormalized.
    const Eigen::VectorXd& impurity_decrease() const { return importance_; }

protected:
    friend struct ClassifierIo;
    friend class RandomForest;
    void do_fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                std::uint64_t seed) override;

    TreeHyper hyper_;
    std::vector<TreeNode> nodes_;
    Eigen::VectorXd importance_;
};

class RandomForest : public Classifier {
public:
    explicit RandomForest(ForestHyper hyper = {}) : hyper_(hyper) {}
    std::string kind() const override { return "forest"; }
    Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& x) const override;
    long parameter_count() const override;

    // Mean decrease in Gini impurity over trees, normalized to sum 1
    // (all-zero when no tree ever split).
    Eigen::VectorXd feature_importance() const;

    const std::vector<DecisionTree>& trees() const { return trees_; }

protected:
    friend struct ClassifierIo;
    void do_fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                std::uint64_t seed) override;

    ForestHyper hyper_;
    std::vector<DecisionTree> trees_;
};

}  // namespace thermobench
