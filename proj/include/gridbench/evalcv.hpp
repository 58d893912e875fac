#pragma once

#include "gridbench/classify.hpp"
#include "gridbench/dimred.hpp"
#include "gridbench/featsel.hpp"
#include "gridbench/gridsim.hpp"
#include "gridbench/preprocess.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gridbench {

// Rows = true class, columns = predicted class.
struct ConfusionMatrix {
    Eigen::MatrixXi counts;
};

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
};

struct EvalReport {
    Metrics aggregate;              // fold-wise mean
    std::vector<Metrics> per_fold;
    ConfusionMatrix cm;             // summed over folds
};

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred, int l);

// Macro precision/recall (zero-denominator classes contribute 0), macro F1
// as the harmonic mean of macro P and R, and accuracy.
Metrics macro_metrics(const ConfusionMatrix& cm);

double f1_from_pr(double precision, double recall);

// Fold id per sample; per-class counts across folds differ by at most 1.
std::vector<int> stratified_kfold(const std::vector<int>& y, int k, std::uint64_t seed);

// Hyperparameters for every method in the roster, surfaced in the config.
struct MethodParams {
    int relieff_iters = 200;  // capped at n during fit
    int relieff_k = 10;
    double inffs_alpha = 0.5;
    double lasso_lambda = 1e-3;
    double lasso_tol = 1e-4;
    int lasso_max_iter = 200;
    int mi_bins = 10;
    double mi_beta = 1.0;
    int ufsol_k = 10;
    int ufsol_triplets = 20000;
    double lda_shrinkage = 1e-3;
    int mds_landmarks = 1000;
    int lle_k = 12;
    double lle_reg = 1e-3;
    int lle_subsample = 1000;
    int knn_k = 5;
    SvmParams svm;
    RfParams rf;
};

// One cell of the study: normalize, then optionally select top-k features
// or reduce to d dimensions, then classify. Method names: fs one of
// {inffs, relief, lasso, ufsol_standin, cfmi_standin}; dr one of
// {pca, lda, mds, lle}; classifier one of {knn, svm, rf}.
struct PipelineSpec {
    bool normalize = true;
    std::string fs_method;  // empty = none
    int fs_top_k = 0;
    std::string dr_method;  // empty = none
    int dr_d = 0;
    std::string classifier = "knn";
    MethodParams params;
    std::uint64_t seed = 0;
};

// Everything fitted from a training slice. Fitting never sees other rows,
// which is what keeps cross-validation leak-free.
struct FittedPipeline {
    std::optional<Normalizer> normalizer;
    std::optional<FeatureRanking> ranking;
    std::vector<int> selected;
    std::optional<Reducer> reducer;
    TrainedClassifier classifier;
};

FittedPipeline fit_pipeline(const Eigen::MatrixXd& X, const std::vector<int>& y,
                            const PipelineSpec& spec);
std::vector<int> predict_pipeline(const FittedPipeline& fp, const Eigen::MatrixXd& Xq);

FeatureRanking fit_ranking(const std::string& method, const Eigen::MatrixXd& X,
                           const std::vector<int>& y, const MethodParams& params,
                           std::uint64_t seed);
Reducer fit_reducer(const std::string& method, const Eigen::MatrixXd& X,
                    const std::vector<int>& y, int d, const MethodParams& params,
                    std::uint64_t seed);
TrainedClassifier fit_classifier(const std::string& method, const Eigen::MatrixXd& X,
                                 const std::vector<int>& y, const MethodParams& params,
                                 std::uint64_t seed);

struct FoldResult {
    Metrics metrics;
    ConfusionMatrix cm;
};

FoldResult run_fold(const PipelineSpec& spec, const Eigen::MatrixXd& X,
                    const std::vector<int>& y, int n_classes,
                    const std::vector<int>& train_idx, const std::vector<int>& test_idx);

EvalReport cross_validate(const PipelineSpec& spec, const Dataset& data, int k,
                          std::uint64_t seed);

std::string eval_report_to_json(const EvalReport& r);
void write_confusion_csv(const std::string& path, const ConfusionMatrix& cm);

} // namespace gridbench
