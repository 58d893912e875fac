#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace gridbench {

// Feature ranking: `order` lists original feature indices best-first,
// `scores` stays aligned to the original indices. Score ties break toward
// the lower feature index.
struct FeatureRanking {
    std::vector<int> order;
    std::vector<double> scores;
    std::string method;
    bool converged = true; // false when an iterative solver hit max_iter
};

// Descending-score ranking with index-ascending tie-break.
FeatureRanking ranking_from_scores(std::vector<double> scores, std::string method);

// ReliefF: sampled instances attract weight from same-class neighbors and
// repel class-prior-weighted other-class neighbors. Distances use
// max-normalized per-feature differences.
FeatureRanking rank_relieff(const Eigen::MatrixXd& X, const std::vector<int>& y,
                            int n_iters, int k, std::uint64_t seed);

// Infinite feature selection over the affinity
//   A_ij = alpha * max(sigma_i, sigma_j) + (1 - alpha) * (1 - |corr_ij|)
// scored by row sums of the path-energy matrix (I - rA)^-1 - I.
// r <= 0 selects 0.9 / spectral_radius(A) automatically.
FeatureRanking rank_inffs(const Eigen::MatrixXd& X, double alpha = 0.5, double r = 0.0);

// Path-energy matrix (I - rA)^-1 - I, equivalently the sum of (rA)^l for
// l >= 1. Exposed for direct checks against the truncated series.
Eigen::MatrixXd inffs_energy(const Eigen::MatrixXd& A, double r);

// One-vs-rest L1 least squares by cyclic coordinate descent with
// soft-thresholding; columns are standardized internally. Feature score is
// the largest absolute coefficient across the class problems.
FeatureRanking rank_lasso(const Eigen::MatrixXd& X, const std::vector<int>& y,
                          double lambda, double tol = 1e-4, int max_iter = 1000);

// Greedy mutual-information filter (relevance minus beta * mean redundancy
// against already-picked features) on equal-frequency bins. Stand-in for
// the CFMI slot.
FeatureRanking rank_mi(const Eigen::MatrixXd& X, const std::vector<int>& y,
                       int n_bins = 10, double beta = 1.0);

// Ordinal-locality ranking: score a feature by how often it alone preserves
// the full-space distance ordering of sampled neighbor triplets. Stand-in
// for the UFSOL slot.
FeatureRanking rank_ufsol(const Eigen::MatrixXd& X, int k, int n_triplets,
                          std::uint64_t seed);

std::vector<int> select_top(const FeatureRanking& r, int k);

// Mutual information in bits between two discrete label vectors.
double mutual_information(const std::vector<int>& a, int ca,
                          const std::vector<int>& b, int cb);

// Equal-frequency discretization of a column into n_bins levels
// (rank-based; ties resolved by row index).
std::vector<int> equal_frequency_bins(const Eigen::VectorXd& col, int n_bins);

void write_ranking_csv(const std::string& path, const FeatureRanking& r);

} // namespace gridbench
