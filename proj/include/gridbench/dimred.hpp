#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace gridbench {

enum class ReducerKind { PCA, LDA, MDS, LLE };

std::string reducer_kind_name(ReducerKind k);

// Fitted dimensionality-reduction transform. Which parameter block is
// populated depends on `kind`:
//   PCA/LDA: mean + projection (p x d, unit-norm columns)
//   MDS:     landmark points, their embedding and eigenvalues, plus the
//            column means of the landmark squared-distance matrix
//   LLE:     fitted subsample with its embedding, k and reg
struct Reducer {
    ReducerKind kind = ReducerKind::PCA;
    int d = 0;

    Eigen::VectorXd mean;
    Eigen::MatrixXd projection;
    Eigen::VectorXd eigenvalues; // explained variance for PCA

    Eigen::MatrixXd landmarks;
    Eigen::MatrixXd landmark_embedding;
    Eigen::VectorXd landmark_eigenvalues;
    Eigen::VectorXd landmark_sqdist_mean;

    Eigen::MatrixXd fitted_points;
    Eigen::MatrixXd fitted_embedding;
    int k = 0;
    double reg = 0.0;
};

// Top-d principal components of the sample covariance, eigenvalues
// descending; the largest-magnitude entry of each component is positive.
Reducer fit_pca(const Eigen::MatrixXd& X, int d);

// Fisher discriminant directions from the generalized eigenproblem
// S_b v = lambda (S_w + shrinkage * trace(S_w)/p * I) v.
Reducer fit_lda(const Eigen::MatrixXd& X, const std::vector<int>& y, int d,
                double shrinkage = 1e-3);

// Classical (Torgerson) MDS on a seeded landmark subset; other rows embed
// by distance-based least squares against the landmarks.
Reducer fit_mds(const Eigen::MatrixXd& X, int d, int n_landmarks, std::uint64_t seed);

// Locally linear embedding on a seeded subsample; out-of-sample rows embed
// through their reconstruction weights over the k nearest fitted points.
Reducer fit_lle(const Eigen::MatrixXd& X, int d, int k, double reg,
                int n_subsample, std::uint64_t seed);

Eigen::MatrixXd transform(const Reducer& r, const Eigen::MatrixXd& X);

// Restriction of a fitted reducer to its leading d_head dimensions. For all
// four methods the smaller embedding is a column prefix of the larger one,
// so a single fit covers a whole dimension sweep.
Reducer head(const Reducer& r, int d_head);

// LLE reconstruction weights of `point` against the rows of `basis` listed
// in `nbr`; weights sum to 1.
Eigen::VectorXd lle_weights(const Eigen::MatrixXd& basis, const std::vector<int>& nbr,
                            const Eigen::RowVectorXd& point, double reg);

std::string reducer_to_json(const Reducer& r);
Reducer reducer_from_json(const std::string& text);

} // namespace gridbench
