#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <variant>
#include <vector>

namespace gridbench {

struct KnnModel {
    Eigen::MatrixXd train_x;
    std::vector<int> train_y;
    int k = 5;
    int n_classes = 0;
};

// One-vs-rest linear SVM, no intercept; data is centered internally so the
// hyperplanes need not pass through the raw origin.
struct SvmModel {
    Eigen::MatrixXd weights; // l x p, row per class
    Eigen::VectorXd mean;
    int n_classes = 0;
    // Primal objective of the averaged iterate after each epoch, summed over
    // the class problems.
    std::vector<double> objective_history;
};

struct RfNode {
    int feature = -1;     // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int leaf_class = -1;
};

struct RfTree {
    std::vector<RfNode> nodes;
};

struct RfModel {
    std::vector<RfTree> trees;
    int n_classes = 0;
};

using TrainedClassifier = std::variant<KnnModel, SvmModel, RfModel>;

struct SvmParams {
    double c = 1.0;
    int epochs = 100;
};

struct RfParams {
    int n_trees = 100;
    int max_depth = 0; // 0 = unlimited
    int mtry = 0;      // 0 = ceil(sqrt(p))
    int min_leaf = 1;
    bool bootstrap = true;
};

KnnModel fit_knn(const Eigen::MatrixXd& X, const std::vector<int>& y, int k);
SvmModel fit_svm(const Eigen::MatrixXd& X, const std::vector<int>& y,
                 const SvmParams& params, std::uint64_t seed);
RfModel fit_rf(const Eigen::MatrixXd& X, const std::vector<int>& y,
               const RfParams& params, std::uint64_t seed);

std::vector<int> predict(const KnnModel& m, const Eigen::MatrixXd& Xq);
std::vector<int> predict(const SvmModel& m, const Eigen::MatrixXd& Xq);
std::vector<int> predict(const RfModel& m, const Eigen::MatrixXd& Xq);
std::vector<int> predict(const TrainedClassifier& m, const Eigen::MatrixXd& Xq);

// Gini impurity of a class-count histogram.
double gini_impurity(const std::vector<long>& counts);

// Root-to-leaf evaluation of a single tree.
int rf_tree_predict(const RfTree& tree, const Eigen::RowVectorXd& x);

// Primal objective (1/n) sum hinge + (1/2C)||w||^2 for one binary problem.
double svm_objective(const Eigen::MatrixXd& X, const std::vector<char>& pos,
                     const Eigen::VectorXd& w, double c);

} // namespace gridbench
