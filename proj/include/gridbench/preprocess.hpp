#pragma once

#include <Eigen/Dense>

namespace gridbench {

// Column-wise min-max scaler. Fitted on training rows only; applying to
// unseen rows may produce values outside [0,1] (no clamping). Columns with
// max == min map to 0.
struct Normalizer {
    Eigen::VectorXd col_min;
    Eigen::VectorXd col_max;
};

Normalizer fit_minmax(const Eigen::MatrixXd& X);
Eigen::MatrixXd transform_minmax(const Normalizer& norm, const Eigen::MatrixXd& X);

} // namespace gridbench
