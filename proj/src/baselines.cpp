#include "thermobench/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "baselines_detail.hpp"
#include "thermobench/rng.hpp"

namespace thermobench {

// ---------------------------------------------------------------- base

void Classifier::fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                     int n_classes, std::uint64_t seed) {
    if (x.rows() == 0) throw Error(kind() + ": empty training set");
    if (static_cast<std::size_t>(x.rows()) != y.size())
        throw Error(kind() + ": row/label count mismatch");
    if (n_classes < 2) throw Error(kind() + ": need at least 2 classes");
    for (int label : y)
        if (label < 0 || label >= n_classes)
            throw Error(kind() + ": label out of range");

    n_classes_ = n_classes;
    width_ = static_cast<int>(x.cols());
    seen_.assign(static_cast<std::size_t>(n_classes), false);
    for (int label : y) seen_[static_cast<std::size_t>(label)] = true;
    if (std::count(seen_.begin(), seen_.end(), true) < 2)
        throw Error(kind() + ": need at least 2 classes present in labels");

    const auto start = std::chrono::steady_clock::now();
    do_fit(x, y, seed);
    const auto stop = std::chrono::steady_clock::now();
    train_seconds_ = std::max(
        1e-9, std::chrono::duration<double>(stop - start).count());
}

void Classifier::check_width(const Eigen::MatrixXd& x) const {
    if (static_cast<int>(x.cols()) != width_)
        throw Error(kind() + ": feature width " + std::to_string(x.cols()) +
                    " != training width " + std::to_string(width_));
}

Eigen::MatrixXd Classifier::mask_unseen(Eigen::MatrixXd proba) const {
    for (int c = 0; c < n_classes_; ++c)
        if (!seen_[static_cast<std::size_t>(c)]) proba.col(c).setZero();
    for (Eigen::Index i = 0; i < proba.rows(); ++i) {
        const double s = proba.row(i).sum();
        if (s > 0)
            proba.row(i) /= s;
        else
            proba.row(i).setConstant(1.0 / static_cast<double>(n_classes_));
    }
    return proba;
}

namespace {

int argmax_row(const Eigen::MatrixXd& proba, Eigen::Index i) {
    int best = 0;
    double best_v = proba(i, 0);
    for (int c = 1; c < proba.cols(); ++c)
        if (proba(i, c) > best_v) {
            best_v = proba(i, c);
            best = c;
        }
    return best;
}

}  // namespace

std::vector<int> Classifier::predict(const Eigen::MatrixXd& x) const {
    return predict_both(x).first;
}

std::pair<std::vector<int>, Eigen::MatrixXd> Classifier::predict_both(
    const Eigen::MatrixXd& x) const {
    Eigen::MatrixXd proba = predict_proba(x);
    std::vector<int> labels(static_cast<std::size_t>(proba.rows()));
    for (Eigen::Index i = 0; i < proba.rows(); ++i)
        labels[static_cast<std::size_t>(i)] = argmax_row(proba, i);
    return {std::move(labels), std::move(proba)};
}

// ---------------------------------------------------------------- logreg

void LogisticRegression::do_fit(const Eigen::MatrixXd& x,
                                const std::vector<int>& y, std::uint64_t) {
    const Eigen::Index n = x.rows();
    const Eigen::Index f = x.cols();
    const int c = n_classes_;
    w_ = Eigen::MatrixXd::Zero(f, c);
    b_ = Eigen::RowVectorXd::Zero(c);

    const double inv_n = 1.0 / static_cast<double>(n);
    Eigen::MatrixXd p(n, c);
    for (int epoch = 0; epoch < hyper_.epochs; ++epoch) {
        p.noalias() = x * w_;
        p.rowwise() += b_;
        // stable softmax, then convert in place to the residual P - Y
        for (Eigen::Index i = 0; i < n; ++i) {
            const double m = p.row(i).maxCoeff();
            p.row(i) = (p.row(i).array() - m).exp();
            p.row(i) /= p.row(i).sum();
            p(i, y[static_cast<std::size_t>(i)]) -= 1.0;
        }
        Eigen::MatrixXd grad_w = x.transpose() * p * inv_n + hyper_.l2 * w_;
        Eigen::RowVectorXd grad_b = p.colwise().sum() * inv_n;
        w_ -= hyper_.lr * grad_w;
        b_ -= hyper_.lr * grad_b;
    }
}

Eigen::MatrixXd LogisticRegression::predict_proba(const Eigen::MatrixXd& x) const {
    check_width(x);
    Eigen::MatrixXd p = x * w_;
    p.rowwise() += b_;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        const double m = p.row(i).maxCoeff();
        p.row(i) = (p.row(i).array() - m).exp();
        p.row(i) /= p.row(i).sum();
    }
    return mask_unseen(std::move(p));
}

long LogisticRegression::parameter_count() const {
    return static_cast<long>(w_.size() + b_.size());
}

// ---------------------------------------------------------------- gnb

void GaussianNaiveBayes::do_fit(const Eigen::MatrixXd& x,
                                const std::vector<int>& y, std::uint64_t) {
    const Eigen::Index n = x.rows();
    const Eigen::Index f = x.cols();
    const int c = n_classes_;
    mean_ = Eigen::MatrixXd::Zero(c, f);
    var_ = Eigen::MatrixXd::Zero(c, f);
    log_prior_ = Eigen::VectorXd::Constant(
        c, -std::numeric_limits<double>::infinity());

    Eigen::VectorXd counts = Eigen::VectorXd::Zero(c);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int label = y[static_cast<std::size_t>(i)];
        counts[label] += 1.0;
        mean_.row(label) += x.row(i);
    }
    for (int k = 0; k < c; ++k)
        if (counts[k] > 0) mean_.row(k) /= counts[k];
    for (Eigen::Index i = 0; i < n; ++i) {
        const int label = y[static_cast<std::size_t>(i)];
        var_.row(label) +=
            (x.row(i) - mean_.row(label)).array().square().matrix();
    }
    for (int k = 0; k < c; ++k) {
        if (counts[k] > 0) {
            var_.row(k) /= counts[k];
            log_prior_[k] = std::log(counts[k] / static_cast<double>(n));
        }
        var_.row(k) = var_.row(k).cwiseMax(1e-9);
    }
}

Eigen::MatrixXd GaussianNaiveBayes::predict_proba(const Eigen::MatrixXd& x) const {
    check_width(x);
    const Eigen::Index n = x.rows();
    const int c = n_classes_;
    constexpr double log_2pi = 1.8378770664093453;

    Eigen::MatrixXd logp(n, c);
    for (int k = 0; k < c; ++k) {
        if (!seen_[static_cast<std::size_t>(k)]) {
            logp.col(k).setConstant(-std::numeric_limits<double>::infinity());
            continue;
        }
        const double norm =
            -0.5 * (var_.row(k).array().log() + log_2pi).sum() + log_prior_[k];
        const Eigen::MatrixXd d2 =
            (x.rowwise() - mean_.row(k)).array().square();
        const Eigen::VectorXd inv_var = var_.row(k).cwiseInverse().transpose();
        logp.col(k) = (-0.5 * (d2 * inv_var)).array() + norm;
    }
    // softmax over log-posteriors
    Eigen::MatrixXd proba(n, c);
    for (Eigen::Index i = 0; i < n; ++i) {
        double m = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < c; ++k) m = std::max(m, logp(i, k));
        double sum = 0.0;
        for (int k = 0; k < c; ++k) {
            const double e = std::isfinite(logp(i, k)) ? std::exp(logp(i, k) - m) : 0.0;
            proba(i, k) = e;
            sum += e;
        }
        proba.row(i) /= sum;
    }
    return proba;
}

long GaussianNaiveBayes::parameter_count() const {
    return static_cast<long>(mean_.size() + var_.size() + log_prior_.size());
}

// ---------------------------------------------------------------- linsvm

void LinearSvm::do_fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                       std::uint64_t seed) {
    const Eigen::Index n = x.rows();
    const Eigen::Index f = x.cols();
    const int c = n_classes_;
    w_ = Eigen::MatrixXd::Zero(c, f + 1);
    const double lambda = 1.0 / (std::max(1e-12, hyper_.c) * static_cast<double>(n));

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);

    for (int k = 0; k < c; ++k) {
        if (!seen_[static_cast<std::size_t>(k)]) continue;
        CounterRng rng(CounterRng::derive(seed, static_cast<std::uint64_t>(k)));
        Eigen::VectorXd w = Eigen::VectorXd::Zero(f + 1);
        long t = 0;
        // Pegasos-style stochastic subgradient descent; the bias rides along
        // as an always-1 feature and shares the regularizer.
        for (int epoch = 0; epoch < hyper_.epochs; ++epoch) {
            rng.shuffle(order);
            for (int idx : order) {
                ++t;
                const double eta = 1.0 / (lambda * static_cast<double>(t));
                const double label = y[static_cast<std::size_t>(idx)] == k ? 1.0 : -1.0;
                const double margin =
                    label * (w.head(f).dot(x.row(idx)) + w[f]);
                w *= (1.0 - eta * lambda);
                if (margin < 1.0) {
                    w.head(f) += eta * label * x.row(idx).transpose();
                    w[f] += eta * label;
                }
            }
        }
        w_.row(k) = w.transpose();
    }
}

Eigen::MatrixXd LinearSvm::predict_proba(const Eigen::MatrixXd& x) const {
    check_width(x);
    Eigen::MatrixXd margins = x * w_.leftCols(width_).transpose();
    margins.rowwise() += w_.col(width_).transpose();
    // softmax over one-vs-rest margins; a documented approximation, not a
    // calibrated probability
    for (Eigen::Index i = 0; i < margins.rows(); ++i) {
        const double m = margins.row(i).maxCoeff();
        margins.row(i) = (margins.row(i).array() - m).exp();
        margins.row(i) /= margins.row(i).sum();
    }
    return mask_unseen(std::move(margins));
}

long LinearSvm::parameter_count() const { return static_cast<long>(w_.size()); }

// ---------------------------------------------------------------- majority

void MajorityClassifier::do_fit(const Eigen::MatrixXd&, const std::vector<int>& y,
                                std::uint64_t) {
    train_freq_ = Eigen::RowVectorXd::Zero(n_classes_);
    for (int label : y) train_freq_[label] += 1.0;
    train_freq_ /= static_cast<double>(y.size());
}

Eigen::MatrixXd MajorityClassifier::predict_proba(const Eigen::MatrixXd& x) const {
    // feature width deliberately unchecked: the prediction ignores features
    return train_freq_.replicate(x.rows(), 1);
}

// ---------------------------------------------------------------- random

void RandomClassifier::do_fit(const Eigen::MatrixXd&, const std::vector<int>& y,
                              std::uint64_t seed) {
    seed_ = seed;
    seen_classes_.clear();
    for (int k = 0; k < n_classes_; ++k)
        if (seen_[static_cast<std::size_t>(k)]) seen_classes_.push_back(k);
    (void)y;
}

Eigen::MatrixXd RandomClassifier::predict_proba(const Eigen::MatrixXd& x) const {
    Eigen::MatrixXd proba = Eigen::MatrixXd::Zero(x.rows(), n_classes_);
    const double p = 1.0 / static_cast<double>(seen_classes_.size());
    for (int k : seen_classes_) proba.col(k).setConstant(p);
    return proba;
}

std::pair<std::vector<int>, Eigen::MatrixXd> RandomClassifier::predict_both(
    const Eigen::MatrixXd& x) const {
    std::vector<int> labels(static_cast<std::size_t>(x.rows()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const std::uint64_t r = CounterRng::at(seed_, i);
        labels[i] = seen_classes_[r % seen_classes_.size()];
    }
    return {std::move(labels), predict_proba(x)};
}

// ---------------------------------------------------------------- helpers

std::unique_ptr<Classifier> make_classifier(const std::string& kind,
                                            const BaselineHypers& hypers) {
    if (kind == "logreg") return std::make_unique<LogisticRegression>(hypers.logreg);
    if (kind == "gnb") return std::make_unique<GaussianNaiveBayes>();
    if (kind == "knn") return std::make_unique<KnnClassifier>(hypers.knn);
    if (kind == "tree") return std::make_unique<DecisionTree>(hypers.tree);
    if (kind == "forest") return std::make_unique<RandomForest>(hypers.forest);
    if (kind == "linsvm") return std::make_unique<LinearSvm>(hypers.linsvm);
    if (kind == "majority") return std::make_unique<MajorityClassifier>();
    if (kind == "random") return std::make_unique<RandomClassifier>();
    throw Error("unknown classifier kind: " + kind);
}

std::pair<std::vector<int>, Eigen::MatrixXd> soft_vote(
    const std::vector<Eigen::MatrixXd>& member_probas,
    std::vector<double> weights) {
    if (member_probas.empty()) throw Error("soft_vote: no members");
    const Eigen::Index n = member_probas[0].rows();
    const Eigen::Index c = member_probas[0].cols();
    for (const auto& p : member_probas)
        if (p.rows() != n || p.cols() != c)
            throw Error("soft_vote: member shape mismatch");
    if (weights.empty()) weights.assign(member_probas.size(), 1.0);
    if (weights.size() != member_probas.size())
        throw Error("soft_vote: weight count mismatch");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0) throw Error("soft_vote: negative weight");
        wsum += w;
    }
    if (wsum <= 0) throw Error("soft_vote: weights sum to zero");

    Eigen::MatrixXd mix = Eigen::MatrixXd::Zero(n, c);
    for (std::size_t m = 0; m < member_probas.size(); ++m)
        mix += (weights[m] / wsum) * member_probas[m];
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = mix.row(i).sum();
        if (s > 0) mix.row(i) /= s;
    }
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        labels[static_cast<std::size_t>(i)] = argmax_row(mix, i);
    return {std::move(labels), std::move(mix)};
}

std::unique_ptr<Classifier> majority_baseline(const std::vector<int>& train_labels,
                                              int n_classes) {
    auto c = std::make_unique<MajorityClassifier>();
    const Eigen::MatrixXd dummy =
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(train_labels.size()), 1);
    c->fit(dummy, train_labels, n_classes, 0);
    return c;
}

std::unique_ptr<Classifier> random_baseline(std::uint64_t seed, int n_classes) {
    auto c = std::make_unique<RandomClassifier>();
    // all classes assumed present for the synthetic reference predictor
    std::vector<int> labels;
    for (int k = 0; k < n_classes; ++k) labels.push_back(k);
    const Eigen::MatrixXd dummy = Eigen::MatrixXd::Zero(n_classes, 1);
    c->fit(dummy, labels, n_classes, seed);
    return c;
}

}  // namespace thermobench
