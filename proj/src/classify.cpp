#include "gridbench/classify.hpp"
#include "gridbench/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gridbench {

namespace {

int n_classes_of(const std::vector<int>& y) {
    return y.empty() ? 0 : *std::max_element(y.begin(), y.end()) + 1;
}

int argmax_smallest_tie(const std::vector<double>& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i) {
        if (v[i] > v[best]) best = i;
    }
    return best;
}

} // namespace

double gini_impurity(const std::vector<long>& counts) {
    long n = std::accumulate(counts.begin(), counts.end(), 0L);
    if (n == 0) return 0.0;
    double acc = 0.0;
    for (long c : counts) {
        double f = static_cast<double>(c) / n;
        acc += f * f;
    }
    return 1.0 - acc;
}

// ---------------------------------------------------------------- kNN

KnnModel fit_knn(const Eigen::MatrixXd& X, const std::vector<int>& y, int k) {
    if (X.rows() == 0) throw std::invalid_argument("fit_knn: empty training set");
    if (k < 1 || k > X.rows()) throw std::invalid_argument("fit_knn: k out of range");
    return {X, y, k, n_classes_of(y)};
}

std::vector<int> predict(const KnnModel& m, const Eigen::MatrixXd& Xq) {
    const int n = static_cast<int>(m.train_x.rows());
    const int k = m.k;
    Eigen::VectorXd train_sq = m.train_x.rowwise().squaredNorm();

    std::vector<int> out(Xq.rows());
    std::vector<std::pair<double, int>> cand(n);
    const int block = 128;
    for (Eigen::Index start = 0; start < Xq.rows(); start += block) {
        Eigen::Index rows = std::min<Eigen::Index>(block, Xq.rows() - start);
        Eigen::MatrixXd d = -2.0 * Xq.middleRows(start, rows) * m.train_x.transpose();
        Eigen::VectorXd q_sq = Xq.middleRows(start, rows).rowwise().squaredNorm();
        for (Eigen::Index i = 0; i < rows; ++i) {
            for (int j = 0; j < n; ++j) cand[j] = {d(i, j) + q_sq[i] + train_sq[j], j};
            std::partial_sort(cand.begin(), cand.begin() + k, cand.end());

            std::vector<int> votes(m.n_classes, 0);
            std::vector<double> cum_dist(m.n_classes, 0.0);
            for (int j = 0; j < k; ++j) {
                int cls = m.train_y[cand[j].second];
                ++votes[cls];
                cum_dist[cls] += std::sqrt(std::max(0.0, cand[j].first));
            }
            // Majority vote; ties by smaller cumulative distance, then id.
            int best = -1;
            for (int c = 0; c < m.n_classes; ++c) {
                if (votes[c] == 0) continue;
                if (best < 0 || votes[c] > votes[best] ||
                    (votes[c] == votes[best] && cum_dist[c] < cum_dist[best])) {
                    best = c;
                }
            }
            out[start + i] = best;
        }
    }
    return out;
}

// ---------------------------------------------------------------- SVM

double svm_objective(const Eigen::MatrixXd& X, const std::vector<char>& pos,
                     const Eigen::VectorXd& w, double c) {
    Eigen::VectorXd scores = X * w;
    double hinge = 0.0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        hinge += std::max(0.0, 1.0 - pos[i] * scores[i]);
    }
    return hinge / X.rows() + w.squaredNorm() / (2.0 * c);
}

SvmModel fit_svm(const Eigen::MatrixXd& X, const std::vector<int>& y,
                 const SvmParams& params, std::uint64_t seed) {
    if (params.c <= 0) throw std::invalid_argument("fit_svm: C must be > 0");
    const int l = n_classes_of(y);
    if (l < 2) throw std::invalid_argument("fit_svm: need at least 2 classes");
    const Eigen::Index n = X.rows(), p = X.cols();

    SvmModel m;
    m.n_classes = l;
    m.mean = X.colwise().mean();
    Eigen::MatrixXd Xc = X.rowwise() - m.mean.transpose();
    m.weights.resize(l, p);
    m.objective_history.assign(params.epochs, 0.0);

    const double lambda = 1.0 / params.c;
    const double radius = std::sqrt(params.c);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    for (int c = 0; c < l; ++c) {
        std::vector<char> pos(n);
        for (Eigen::Index i = 0; i < n; ++i) pos[i] = (y[i] == c) ? 1 : -1;

        Rng rng(mix_seed(seed, 10 + static_cast<std::uint64_t>(c)));
        Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
        Eigen::VectorXd w_sum = Eigen::VectorXd::Zero(p);
        long t = 0;

        for (int epoch = 0; epoch < params.epochs; ++epoch) {
            std::shuffle(order.begin(), order.end(), rng);
            for (int i : order) {
                ++t;
                double eta = 1.0 / (lambda * t);
                double margin = pos[i] * Xc.row(i).dot(w);
                w *= (1.0 - eta * lambda);
                if (margin < 1.0) w += (eta * pos[i]) * Xc.row(i).transpose();
                double norm = w.norm();
                if (norm > radius) w *= radius / norm;
                w_sum += w;
            }
            m.objective_history[epoch] += svm_objective(Xc, pos, (w_sum / t).eval(), params.c);
        }
        m.weights.row(c) = (w_sum / t).transpose();
    }
    return m;
}

std::vector<int> predict(const SvmModel& m, const Eigen::MatrixXd& Xq) {
    Eigen::MatrixXd scores = (Xq.rowwise() - m.mean.transpose()) * m.weights.transpose();
    std::vector<int> out(Xq.rows());
    for (Eigen::Index i = 0; i < Xq.rows(); ++i) {
        int best = 0;
        for (int c = 1; c < m.n_classes; ++c) {
            if (scores(i, c) > scores(i, best)) best = c;
        }
        out[i] = best;
    }
    return out;
}

// ---------------------------------------------------------------- RF

namespace {

struct TreeBuilder {
    const Eigen::MatrixXd& x;
    const std::vector<int>& y;
    int n_classes;
    int max_depth;
    int mtry;
    int min_leaf;
    Rng& rng;
    RfTree& tree;
    std::vector<int> feature_pool;

    int make_leaf(const std::vector<long>& counts) {
        int cls = 0;
        for (int c = 1; c < n_classes; ++c) {
            if (counts[c] > counts[cls]) cls = c;
        }
        tree.nodes.push_back({-1, 0.0, -1, -1, cls});
        return static_cast<int>(tree.nodes.size()) - 1;
    }

    int build(std::vector<int>& idx, int depth) {
        std::vector<long> counts(n_classes, 0);
        for (int i : idx) ++counts[y[i]];
        double impurity = gini_impurity(counts);

        bool stop = impurity == 0.0 ||
                    (max_depth > 0 && depth >= max_depth) ||
                    static_cast<int>(idx.size()) < 2 * min_leaf;
        if (stop) return make_leaf(counts);

        // Partial Fisher-Yates draw of mtry candidate features.
        int p = static_cast<int>(x.cols());
        for (int j = 0; j < mtry; ++j) {
            std::uniform_int_distribution<int> pick(j, p - 1);
            std::swap(feature_pool[j], feature_pool[pick(rng)]);
        }

        int best_feature = -1;
        double best_threshold = 0.0, best_gain = 0.0;
        std::vector<std::pair<double, int>> vals(idx.size());
        std::vector<long> left(n_classes);

        for (int j = 0; j < mtry; ++j) {
            int f = feature_pool[j];
            for (std::size_t i = 0; i < idx.size(); ++i) vals[i] = {x(idx[i], f), y[idx[i]]};
            std::sort(vals.begin(), vals.end());

            std::fill(left.begin(), left.end(), 0L);
            std::vector<long> right = counts;
            long nl = 0, n = static_cast<long>(idx.size());
            for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
                ++left[vals[i].second];
                --right[vals[i].second];
                ++nl;
                if (vals[i].first == vals[i + 1].first) continue;
                if (nl < min_leaf || n - nl < min_leaf) continue;
                double gain = impurity -
                              (nl * gini_impurity(left) + (n - nl) * gini_impurity(right)) / n;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = f;
                    best_threshold = 0.5 * (vals[i].first + vals[i + 1].first);
                }
            }
        }
        if (best_feature < 0) return make_leaf(counts);

        std::vector<int> idx_left, idx_right;
        for (int i : idx) {
            (x(i, best_feature) <= best_threshold ? idx_left : idx_right).push_back(i);
        }
        idx.clear();
        idx.shrink_to_fit();

        int node = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({best_feature, best_threshold, -1, -1, -1});
        tree.nodes[node].left = build(idx_left, depth + 1);
        tree.nodes[node].right = build(idx_right, depth + 1);
        return node;
    }
};

} // namespace

RfModel fit_rf(const Eigen::MatrixXd& X, const std::vector<int>& y,
               const RfParams& params, std::uint64_t seed) {
    if (params.n_trees < 1) throw std::invalid_argument("fit_rf: n_trees must be >= 1");
    const int n = static_cast<int>(X.rows());
    const int p = static_cast<int>(X.cols());
    if (n == 0) throw std::invalid_argument("fit_rf: empty training set");
    int mtry = params.mtry > 0 ? params.mtry : static_cast<int>(std::ceil(std::sqrt(p)));
    if (mtry > p) throw std::invalid_argument("fit_rf: mtry > feature count");

    RfModel m;
    m.n_classes = n_classes_of(y);
    m.trees.resize(params.n_trees);

    for (int t = 0; t < params.n_trees; ++t) {
        Rng rng(mix_seed(seed, 1000 + static_cast<std::uint64_t>(t)));
        std::vector<int> idx(n);
        if (params.bootstrap) {
            std::uniform_int_distribution<int> pick(0, n - 1);
            for (int i = 0; i < n; ++i) idx[i] = pick(rng);
        } else {
            std::iota(idx.begin(), idx.end(), 0);
        }
        TreeBuilder builder{X, y, m.n_classes, params.max_depth, mtry,
                            params.min_leaf, rng, m.trees[t], {}};
        builder.feature_pool.resize(p);
        std::iota(builder.feature_pool.begin(), builder.feature_pool.end(), 0);
        builder.build(idx, 0);
    }
    return m;
}

int rf_tree_predict(const RfTree& tree, const Eigen::RowVectorXd& x) {
    int node = 0;
    while (tree.nodes[node].feature >= 0) {
        const RfNode& nd = tree.nodes[node];
        node = x[nd.feature] <= nd.threshold ? nd.left : nd.right;
    }
    return tree.nodes[node].leaf_class;
}

std::vector<int> predict(const RfModel& m, const Eigen::MatrixXd& Xq) {
    std::vector<int> out(Xq.rows());
    std::vector<double> votes(m.n_classes);
    for (Eigen::Index i = 0; i < Xq.rows(); ++i) {
        std::fill(votes.begin(), votes.end(), 0.0);
        for (const RfTree& t : m.trees) ++votes[rf_tree_predict(t, Xq.row(i))];
        out[i] = argmax_smallest_tie(votes);
    }
    return out;
}

std::vector<int> predict(const TrainedClassifier& m, const Eigen::MatrixXd& Xq) {
    return std::visit([&](const auto& model) { return predict(model, Xq); }, m);
}

} // namespace gridbench
