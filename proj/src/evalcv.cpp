#include "gridbench/evalcv.hpp"
#include "gridbench/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace gridbench {

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred, int l) {
    if (y_true.size() != y_pred.size()) throw std::invalid_argument("confusion: length mismatch");
    ConfusionMatrix cm;
    cm.counts = Eigen::MatrixXi::Zero(l, l);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] < 0 || y_true[i] >= l || y_pred[i] < 0 || y_pred[i] >= l) {
            throw std::invalid_argument("confusion: label out of range");
        }
        ++cm.counts(y_true[i], y_pred[i]);
    }
    return cm;
}

double f1_from_pr(double precision, double recall) {
    double s = precision + recall;
    return s > 0 ? 2.0 * precision * recall / s : 0.0;
}

Metrics macro_metrics(const ConfusionMatrix& cm) {
    const int l = static_cast<int>(cm.counts.rows());
    long total = cm.counts.sum();
    if (total == 0) throw std::invalid_argument("macro_metrics: empty confusion matrix");

    double precision = 0.0, recall = 0.0;
    long trace = 0;
    for (int k = 0; k < l; ++k) {
        long predicted = cm.counts.col(k).sum(); // predicted-as-k
        long actual = cm.counts.row(k).sum();    // truly k
        long correct = cm.counts(k, k);
        trace += correct;
        if (predicted > 0) precision += static_cast<double>(correct) / predicted;
        if (actual > 0) recall += static_cast<double>(correct) / actual;
    }
    Metrics m;
    m.precision = precision / l;
    m.recall = recall / l;
    m.f1 = f1_from_pr(m.precision, m.recall);
    m.accuracy = static_cast<double>(trace) / total;
    return m;
}

std::vector<int> stratified_kfold(const std::vector<int>& y, int k, std::uint64_t seed) {
    const int l = y.empty() ? 0 : *std::max_element(y.begin(), y.end()) + 1;
    std::vector<std::vector<int>> members(l);
    for (std::size_t i = 0; i < y.size(); ++i) members[y[i]].push_back(static_cast<int>(i));
    for (const auto& m : members) {
        if (!m.empty() && static_cast<int>(m.size()) < k) {
            throw std::invalid_argument("stratified_kfold: class smaller than k");
        }
    }

    std::vector<int> fold(y.size(), -1);
    for (int c = 0; c < l; ++c) {
        Rng rng(mix_seed(seed, 20 + static_cast<std::uint64_t>(c)));
        std::shuffle(members[c].begin(), members[c].end(), rng);
        for (std::size_t j = 0; j < members[c].size(); ++j) {
            fold[members[c][j]] = static_cast<int>(j % k);
        }
    }
    return fold;
}

FeatureRanking fit_ranking(const std::string& method, const Eigen::MatrixXd& X,
                           const std::vector<int>& y, const MethodParams& params,
                           std::uint64_t seed) {
    const int n = static_cast<int>(X.rows());
    if (method == "relief") {
        return rank_relieff(X, y, std::min(params.relieff_iters, n), params.relieff_k, seed);
    }
    if (method == "inffs") return rank_inffs(X, params.inffs_alpha);
    if (method == "lasso") {
        return rank_lasso(X, y, params.lasso_lambda, params.lasso_tol, params.lasso_max_iter);
    }
    if (method == "cfmi_standin") return rank_mi(X, y, params.mi_bins, params.mi_beta);
    if (method == "ufsol_standin") return rank_ufsol(X, params.ufsol_k, params.ufsol_triplets, seed);
    throw std::invalid_argument("fit_ranking: unknown method " + method);
}

Reducer fit_reducer(const std::string& method, const Eigen::MatrixXd& X,
                    const std::vector<int>& y, int d, const MethodParams& params,
                    std::uint64_t seed) {
    if (method == "pca") return fit_pca(X, d);
    if (method == "lda") return fit_lda(X, y, d, params.lda_shrinkage);
    if (method == "mds") return fit_mds(X, d, params.mds_landmarks, seed);
    if (method == "lle") {
        return fit_lle(X, d, std::max(params.lle_k, d + 1), params.lle_reg,
                       params.lle_subsample, seed);
    }
    throw std::invalid_argument("fit_reducer: unknown method " + method);
}

TrainedClassifier fit_classifier(const std::string& method, const Eigen::MatrixXd& X,
                                 const std::vector<int>& y, const MethodParams& params,
                                 std::uint64_t seed) {
    if (method == "knn") return fit_knn(X, y, std::min<int>(params.knn_k, static_cast<int>(X.rows())));
    if (method == "svm") return fit_svm(X, y, params.svm, seed);
    if (method == "rf") return fit_rf(X, y, params.rf, seed);
    throw std::invalid_argument("fit_classifier: unknown classifier " + method);
}

FittedPipeline fit_pipeline(const Eigen::MatrixXd& X, const std::vector<int>& y,
                            const PipelineSpec& spec) {
    FittedPipeline fp;
    Eigen::MatrixXd cur = X;
    if (spec.normalize) {
        fp.normalizer = fit_minmax(cur);
        cur = transform_minmax(*fp.normalizer, cur);
    }
    if (!spec.fs_method.empty()) {
        fp.ranking = fit_ranking(spec.fs_method, cur, y, spec.params, spec.seed);
        fp.selected = select_top(*fp.ranking, spec.fs_top_k);
        cur = cur(Eigen::all, fp.selected).eval();
    }
    if (!spec.dr_method.empty()) {
        fp.reducer = fit_reducer(spec.dr_method, cur, y, spec.dr_d, spec.params, spec.seed);
        cur = transform(*fp.reducer, cur);
    }
    fp.classifier = fit_classifier(spec.classifier, cur, y, spec.params, spec.seed);
    return fp;
}

std::vector<int> predict_pipeline(const FittedPipeline& fp, const Eigen::MatrixXd& Xq) {
    Eigen::MatrixXd cur = Xq;
    if (fp.normalizer) cur = transform_minmax(*fp.normalizer, cur);
    if (!fp.selected.empty()) cur = cur(Eigen::all, fp.selected).eval();
    if (fp.reducer) cur = transform(*fp.reducer, cur);
    return predict(fp.classifier, cur);
}

FoldResult run_fold(const PipelineSpec& spec, const Eigen::MatrixXd& X,
                    const std::vector<int>& y, int n_classes,
                    const std::vector<int>& train_idx, const std::vector<int>& test_idx) {
    Eigen::MatrixXd train_x = X(train_idx, Eigen::all);
    std::vector<int> train_y(train_idx.size());
    for (std::size_t i = 0; i < train_idx.size(); ++i) train_y[i] = y[train_idx[i]];

    FittedPipeline fp = fit_pipeline(train_x, train_y, spec);

    Eigen::MatrixXd test_x = X(test_idx, Eigen::all);
    std::vector<int> test_y(test_idx.size());
    for (std::size_t i = 0; i < test_idx.size(); ++i) test_y[i] = y[test_idx[i]];
    std::vector<int> pred = predict_pipeline(fp, test_x);

    FoldResult fr;
    fr.cm = confusion(test_y, pred, n_classes);
    fr.metrics = macro_metrics(fr.cm);
    return fr;
}

EvalReport cross_validate(const PipelineSpec& spec, const Dataset& data, int k,
                          std::uint64_t seed) {
    std::vector<int> fold = stratified_kfold(data.y, k, seed);

    EvalReport report;
    report.cm.counts = Eigen::MatrixXi::Zero(data.n_classes, data.n_classes);
    for (int f = 0; f < k; ++f) {
        std::vector<int> train_idx, test_idx;
        for (std::size_t i = 0; i < fold.size(); ++i) {
            (fold[i] == f ? test_idx : train_idx).push_back(static_cast<int>(i));
        }
        FoldResult fr = run_fold(spec, data.X, data.y, data.n_classes, train_idx, test_idx);
        report.per_fold.push_back(fr.metrics);
        report.cm.counts += fr.cm.counts;
    }

    for (const Metrics& m : report.per_fold) {
        report.aggregate.precision += m.precision / k;
        report.aggregate.recall += m.recall / k;
        report.aggregate.f1 += m.f1 / k;
        report.aggregate.accuracy += m.accuracy / k;
    }
    return report;
}

std::string eval_report_to_json(const EvalReport& r) {
    nlohmann::json folds = nlohmann::json::array();
    for (const Metrics& m : r.per_fold) {
        folds.push_back({{"precision", m.precision},
                         {"recall", m.recall},
                         {"f1", m.f1},
                         {"accuracy", m.accuracy}});
    }
    nlohmann::json cm = nlohmann::json::array();
    for (Eigen::Index i = 0; i < r.cm.counts.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < r.cm.counts.cols(); ++j) row.push_back(r.cm.counts(i, j));
        cm.push_back(std::move(row));
    }
    nlohmann::json j{{"accuracy", r.aggregate.accuracy},
                     {"precision", r.aggregate.precision},
                     {"recall", r.aggregate.recall},
                     {"f1", r.aggregate.f1},
                     {"per_fold", std::move(folds)},
                     {"confusion", std::move(cm)}};
    return j.dump(2);
}

void write_confusion_csv(const std::string& path, const ConfusionMatrix& cm) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_confusion_csv: cannot open " + path);
    for (Eigen::Index i = 0; i < cm.counts.rows(); ++i) {
        for (Eigen::Index j = 0; j < cm.counts.cols(); ++j) {
            out << cm.counts(i, j) << (j + 1 < cm.counts.cols() ? ',' : '\n');
        }
    }
}

} // namespace gridbench
