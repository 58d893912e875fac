#include "gridbench/preprocess.hpp"

#include <stdexcept>

namespace gridbench {

Normalizer fit_minmax(const Eigen::MatrixXd& X) {
    if (X.rows() == 0 || X.cols() == 0) throw std::invalid_argument("fit_minmax: empty matrix");
    return {X.colwise().minCoeff(), X.colwise().maxCoeff()};
}

Eigen::MatrixXd transform_minmax(const Normalizer& norm, const Eigen::MatrixXd& X) {
    if (X.cols() != norm.col_min.size()) throw std::invalid_argument("transform_minmax: column count mismatch");
    Eigen::MatrixXd out(X.rows(), X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        double range = norm.col_max[j] - norm.col_min[j];
        if (range == 0.0) {
            out.col(j).setZero();
        } else {
            out.col(j) = (X.col(j).array() - norm.col_min[j]) / range;
        }
    }
    return out;
}

} // namespace gridbench
