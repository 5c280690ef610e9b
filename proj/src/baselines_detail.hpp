#pragma once

// Internal: concrete classifier kinds that need no public surface, plus the
// serialization hook. Shared between baselines.cpp, knn.cpp, baselines_io.cpp.

#include <cstdint>

#include "thermobench/baselines.hpp"

namespace thermobench {

class GaussianNaiveBayes : public Classifier {
public:
    std::string kind() const override { return "gnb"; }
    Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& x) const override;
    long parameter_count() const override;

protected:
    friend struct ClassifierIo;
    void do_fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                std::uint64_t seed) override;

    Eigen::VectorXd log_prior_;   // -inf for unseen classes
    Eigen::MatrixXd mean_;        // classes x features
    Eigen::MatrixXd var_;         // floored at 1e-9
};

class KnnClassifier : public Classifier {
public:
    explicit KnnClassifier(KnnHyper hyper = {}) : hyper_(hyper) {}
    std::string kind() const override { return "knn"; }
    Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& x) const override;
    std::pair<std::vector<int>, Eigen::MatrixXd> predict_both(
        const Eigen::MatrixXd& x) const override;
    long parameter_count() const override;

protected:
    friend struct ClassifierIo;
    void do_fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                std::uint64_t seed) override;

    KnnHyper hyper_;
    Eigen::MatrixXd train_x_;
    std::vector<int> train_y_;
};

class LinearSvm : public Classifier {
public:
    explicit LinearSvm(SvmHyper hyper = {}) : hyper_(hyper) {}
    std::string kind() const override { return "linsvm"; }
    Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& x) const override;
    long parameter_count() const override;

protected:
    friend struct ClassifierIo;
    void do_fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                std::uint64_t seed) override;

    Eigen::MatrixXd w_;  // classes x (features + 1), last column is the bias
};

class MajorityClassifier : public Classifier {
public:
    std::string kind() const override { return "majority"; }
    Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& x) const override;
    long parameter_count() const override { return 1; }

protected:
    friend struct ClassifierIo;
    void do_fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                std::uint64_t seed) override;

    Eigen::RowVectorXd train_freq_;
};

class RandomClassifier : public Classifier {
public:
    std::string kind() const override { return "random"; }
    Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& x) const override;
    std::pair<std::vector<int>, Eigen::MatrixXd> predict_both(
        const Eigen::MatrixXd& x) const override;
    long parameter_count() const override { return 1; }

protected:
    friend struct ClassifierIo;
    void do_fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                std::uint64_t seed) override;

    std::uint64_t seed_ = 0;
    std::vector<int> seen_classes_;
};

}  // namespace thermobench
