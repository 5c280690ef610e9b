#include <algorithm>
#include <cmath>
#include <vector>

#include "baselines_detail.hpp"

namespace thermobench {

void KnnClassifier::do_fit(const Eigen::MatrixXd& x, const std::vector<int>& y,
                           std::uint64_t) {
    if (hyper_.k < 1) throw Error("knn: k must be >= 1");
    if (hyper_.k > x.rows())
        throw Error("knn: k = " + std::to_string(hyper_.k) +
                    " exceeds training size " + std::to_string(x.rows()));
    train_x_ = x;
    train_y_ = y;
}

std::pair<std::vector<int>, Eigen::MatrixXd> KnnClassifier::predict_both(
    const Eigen::MatrixXd& x) const {
    check_width(x);
    const Eigen::Index n_query = x.rows();
    const Eigen::Index n_train = train_x_.rows();
    const int k = hyper_.k;
    const int c = n_classes_;

    std::vector<int> labels(static_cast<std::size_t>(n_query));
    Eigen::MatrixXd proba = Eigen::MatrixXd::Zero(n_query, c);

    // ||q - t||^2 ranks identically to ||t||^2 - 2 q.t (the query norm is
    // constant per row), so queries are processed in blocks with one GEMM.
    const Eigen::VectorXd train_sq = train_x_.rowwise().squaredNorm();
    const Eigen::Index block = std::min<Eigen::Index>(128, n_query);
    // row-major so the per-query scan over training points is contiguous
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> scores(
        block, n_train);

    // (score, train index) pairs; index as final tie-break
    std::vector<std::pair<double, int>> heap(static_cast<std::size_t>(k));

    for (Eigen::Index start = 0; start < n_query; start += block) {
        const Eigen::Index rows = std::min(block, n_query - start);
        scores.topRows(rows).noalias() =
            -2.0 * x.middleRows(start, rows) * train_x_.transpose();
        scores.topRows(rows).rowwise() += train_sq.transpose();

        for (Eigen::Index r = 0; r < rows; ++r) {
            auto worse = [](const std::pair<double, int>& a,
                            const std::pair<double, int>& b) {
                return a.first < b.first ||
                       (a.first == b.first && a.second < b.second);
            };
            // max-heap of the k best (smallest) entries
            for (int j = 0; j < k; ++j)
                heap[static_cast<std::size_t>(j)] = {scores(r, j), static_cast<int>(j)};
            std::make_heap(heap.begin(), heap.end(), worse);
            for (Eigen::Index j = k; j < n_train; ++j) {
                const std::pair<double, int> cand{scores(r, j), static_cast<int>(j)};
                if (worse(cand, heap.front())) {
                    std::pop_heap(heap.begin(), heap.end(), worse);
                    heap.back() = cand;
                    std::push_heap(heap.begin(), heap.end(), worse);
                }
            }

            std::vector<double> votes(static_cast<std::size_t>(c), 0.0);
            std::vector<double> dist_sum(static_cast<std::size_t>(c), 0.0);
            for (const auto& [score, idx] : heap) {
                const int label = train_y_[static_cast<std::size_t>(idx)];
                votes[static_cast<std::size_t>(label)] += 1.0;
                dist_sum[static_cast<std::size_t>(label)] += score;
            }
            // majority vote; ties by smaller summed distance, then class index
            int best = -1;
            for (int label = 0; label < c; ++label) {
                if (votes[static_cast<std::size_t>(label)] == 0) continue;
                if (best < 0 ||
                    votes[static_cast<std::size_t>(label)] > votes[static_cast<std::size_t>(best)] ||
                    (votes[static_cast<std::size_t>(label)] == votes[static_cast<std::size_t>(best)] &&
                     dist_sum[static_cast<std::size_t>(label)] < dist_sum[static_cast<std::size_t>(best)]))
                    best = label;
            }
            const Eigen::Index q = start + r;
            labels[static_cast<std::size_t>(q)] = best;
            for (int label = 0; label < c; ++label)
                proba(q, label) = votes[static_cast<std::size_t>(label)] / static_cast<double>(k);
        }
    }
    return {std::move(labels), std::move(proba)};
}

Eigen::MatrixXd KnnClassifier::predict_proba(const Eigen::MatrixXd& x) const {
    return predict_both(x).second;
}

long KnnClassifier::parameter_count() const {
    return static_cast<long>(train_x_.size()) +
           static_cast<long>(train_y_.size());
}

}  // namespace thermobench
