#include <fstream>

#include <json.hpp>

#include "baselines_detail.hpp"

namespace thermobench {

using nlohmann::json;

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return {};
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(j[static_cast<std::size_t>(i)].size()) != cols)
            throw Error("checkpoint: ragged matrix");
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
    }
    return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v[i] = j[static_cast<std::size_t>(i)].get<double>();
    return v;
}

}  // namespace

struct ClassifierIo {
    static json meta(const Classifier& c) {
        json j;
        j["kind"] = c.kind();
        j["n_classes"] = c.n_classes_;
        j["width"] = c.width_;
        j["seen"] = c.seen_;
        j["train_seconds"] = c.train_seconds_;
        return j;
    }

    static void restore_meta(Classifier& c, const json& j) {
        c.n_classes_ = j.at("n_classes").get<int>();
        c.width_ = j.at("width").get<int>();
        c.seen_ = j.at("seen").get<std::vector<bool>>();
        c.train_seconds_ = j.at("train_seconds").get<double>();
        if (c.n_classes_ < 2 ||
            c.seen_.size() != static_cast<std::size_t>(c.n_classes_))
            throw Error("checkpoint: inconsistent class metadata");
    }

    static json state(const Classifier& c) {
        json j;
        if (const auto* m = dynamic_cast<const LogisticRegression*>(&c)) {
            j["w"] = matrix_to_json(m->w_);
            j["b"] = vector_to_json(m->b_.transpose());
            j["hyper"] = {{"lr", m->hyper_.lr},
                          {"epochs", m->hyper_.epochs},
                          {"l2", m->hyper_.l2}};
        } else if (const auto* m2 = dynamic_cast<const GaussianNaiveBayes*>(&c)) {
            j["log_prior"] = vector_to_json(m2->log_prior_.cwiseMax(-1e308));
            j["mean"] = matrix_to_json(m2->mean_);
            j["var"] = matrix_to_json(m2->var_);
        } else if (const auto* m3 = dynamic_cast<const KnnClassifier*>(&c)) {
            j["k"] = m3->hyper_.k;
            j["train_x"] = matrix_to_json(m3->train_x_);
            j["train_y"] = m3->train_y_;
        } else if (const auto* m4 = dynamic_cast<const DecisionTree*>(&c)) {
            j["hyper"] = {{"max_depth", m4->hyper_.max_depth},
                          {"min_leaf", m4->hyper_.min_leaf},
                          {"feats_per_split", m4->hyper_.feats_per_split}};
            j["nodes"] = nodes_to_json(m4->nodes_);
            j["importance"] = vector_to_json(m4->importance_);
        } else if (const auto* m5 = dynamic_cast<const RandomForest*>(&c)) {
            j["hyper"] = {{"trees", m5->hyper_.trees},
                          {"max_depth", m5->hyper_.max_depth},
                          {"min_leaf", m5->hyper_.min_leaf},
                          {"feats_per_split", m5->hyper_.feats_per_split},
                          {"bootstrap", m5->hyper_.bootstrap}};
            json trees = json::array();
            for (const auto& tree : m5->trees_) {
                json tj;
                tj["meta"] = meta(tree);
                tj["state"] = state(tree);
                trees.push_back(std::move(tj));
            }
            j["trees"] = std::move(trees);
        } else if (const auto* m6 = dynamic_cast<const LinearSvm*>(&c)) {
            j["w"] = matrix_to_json(m6->w_);
        } else if (const auto* m7 = dynamic_cast<const MajorityClassifier*>(&c)) {
            j["train_freq"] = vector_to_json(m7->train_freq_.transpose());
        } else if (const auto* m8 = dynamic_cast<const RandomClassifier*>(&c)) {
            j["seed"] = m8->seed_;
            j["seen_classes"] = m8->seen_classes_;
        } else {
            throw Error("checkpoint: unsupported classifier kind " + c.kind());
        }
        return j;
    }

    static void restore(Classifier& c, const json& j) {
        if (auto* m = dynamic_cast<LogisticRegression*>(&c)) {
            m->w_ = matrix_from_json(j.at("w"));
            m->b_ = vector_from_json(j.at("b")).transpose();
            if (m->w_.cols() != c.n_classes_ || m->w_.rows() != c.width_)
                throw Error("checkpoint: logreg shape mismatch");
        } else if (auto* m2 = dynamic_cast<GaussianNaiveBayes*>(&c)) {
            m2->log_prior_ = vector_from_json(j.at("log_prior"));
            m2->mean_ = matrix_from_json(j.at("mean"));
            m2->var_ = matrix_from_json(j.at("var"));
            if (m2->mean_.rows() != c.n_classes_ || m2->mean_.cols() != c.width_)
                throw Error("checkpoint: gnb shape mismatch");
        } else if (auto* m3 = dynamic_cast<KnnClassifier*>(&c)) {
            m3->hyper_.k = j.at("k").get<int>();
            m3->train_x_ = matrix_from_json(j.at("train_x"));
            m3->train_y_ = j.at("train_y").get<std::vector<int>>();
            if (m3->train_x_.cols() != c.width_ ||
                static_cast<std::size_t>(m3->train_x_.rows()) != m3->train_y_.size())
                throw Error("checkpoint: knn shape mismatch");
        } else if (auto* m4 = dynamic_cast<DecisionTree*>(&c)) {
            m4->hyper_.max_depth = j.at("hyper").at("max_depth").get<int>();
            m4->hyper_.min_leaf = j.at("hyper").at("min_leaf").get<int>();
            m4->hyper_.feats_per_split = j.at("hyper").at("feats_per_split").get<int>();
            m4->nodes_ = nodes_from_json(j.at("nodes"), c.width_, c.n_classes_);
            m4->importance_ = vector_from_json(j.at("importance"));
        } else if (auto* m5 = dynamic_cast<RandomForest*>(&c)) {
            m5->hyper_.trees = j.at("hyper").at("trees").get<int>();
            m5->hyper_.max_depth = j.at("hyper").at("max_depth").get<int>();
            m5->hyper_.min_leaf = j.at("hyper").at("min_leaf").get<int>();
            m5->hyper_.feats_per_split = j.at("hyper").at("feats_per_split").get<int>();
            m5->hyper_.bootstrap = j.at("hyper").at("bootstrap").get<bool>();
            m5->trees_.clear();
            for (const auto& tj : j.at("trees")) {
                DecisionTree tree;
                restore_meta(tree, tj.at("meta"));
                restore(tree, tj.at("state"));
                m5->trees_.push_back(std::move(tree));
            }
        } else if (auto* m6 = dynamic_cast<LinearSvm*>(&c)) {
            m6->w_ = matrix_from_json(j.at("w"));
            if (m6->w_.rows() != c.n_classes_ || m6->w_.cols() != c.width_ + 1)
                throw Error("checkpoint: linsvm shape mismatch");
        } else if (auto* m7 = dynamic_cast<MajorityClassifier*>(&c)) {
            m7->train_freq_ = vector_from_json(j.at("train_freq")).transpose();
        } else if (auto* m8 = dynamic_cast<RandomClassifier*>(&c)) {
            m8->seed_ = j.at("seed").get<std::uint64_t>();
            m8->seen_classes_ = j.at("seen_classes").get<std::vector<int>>();
        } else {
            throw Error("checkpoint: unsupported classifier kind " + c.kind());
        }
    }

    static json nodes_to_json(const std::vector<TreeNode>& nodes) {
        json out = json::array();
        for (const auto& nd : nodes) {
            json nj;
            nj["feature"] = nd.feature;
            nj["threshold"] = nd.threshold;
            nj["left"] = nd.left;
            nj["right"] = nd.right;
            nj["probs"] = nd.probs;
            out.push_back(std::move(nj));
        }
        return out;
    }

    static std::vector<TreeNode> nodes_from_json(const json& j, int width,
                                                 int n_classes) {
        std::vector<TreeNode> nodes;
        const int count = static_cast<int>(j.size());
        for (const auto& nj : j) {
            TreeNode nd;
            nd.feature = nj.at("feature").get<int>();
            nd.threshold = nj.at("threshold").get<double>();
            nd.left = nj.at("left").get<int>();
            nd.right = nj.at("right").get<int>();
            nd.probs = nj.at("probs").get<std::vector<double>>();
            if (nd.feature >= width || nd.left >= count || nd.right >= count)
                throw Error("checkpoint: tree node out of range");
            if (nd.feature < 0 &&
                nd.probs.size() != static_cast<std::size_t>(n_classes))
                throw Error("checkpoint: leaf distribution size mismatch");
            nodes.push_back(std::move(nd));
        }
        if (nodes.empty()) throw Error("checkpoint: empty tree");
        return nodes;
    }
};

void save_classifier(const Classifier& c, const std::string& path) {
    json j;
    j["format"] = "thermobench-classifier";
    j["version"] = 1;
    j["meta"] = ClassifierIo::meta(c);
    j["state"] = ClassifierIo::state(c);
    std::ofstream out(path);
    if (!out) throw Error("cannot write checkpoint: " + path);
    out << j.dump();
    if (!out) throw Error("checkpoint write failed: " + path);
}

std::unique_ptr<Classifier> load_classifier(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open checkpoint: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(std::string("checkpoint parse error: ") + e.what());
    }
    if (j.value("format", "") != "thermobench-classifier")
        throw Error("not a classifier checkpoint: " + path);
    const std::string kind = j.at("meta").at("kind").get<std::string>();
    auto c = make_classifier(kind);
    try {
        ClassifierIo::restore_meta(*c, j.at("meta"));
        ClassifierIo::restore(*c, j.at("state"));
    } catch (const json::exception& e) {
        throw Error(std::string("checkpoint field error: ") + e.what());
    }
    return c;
}

}  // namespace thermobench
