#include "gridbench/featsel.hpp"
#include "gridbench/preprocess.hpp"
#include "gridbench/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gridbench {

namespace {

double soft_threshold(double x, double t) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
}

int sign_of(double x) { return (x > 0) - (x < 0); }

} // namespace

FeatureRanking ranking_from_scores(std::vector<double> scores, std::string method) {
    FeatureRanking r;
    r.method = std::move(method);
    r.order.resize(scores.size());
    std::iota(r.order.begin(), r.order.end(), 0);
    std::stable_sort(r.order.begin(), r.order.end(), [&](int a, int b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    r.scores = std::move(scores);
    return r;
}

FeatureRanking rank_relieff(const Eigen::MatrixXd& X, const std::vector<int>& y,
                            int n_iters, int k, std::uint64_t seed) {
    const int n = static_cast<int>(X.rows());
    const int p = static_cast<int>(X.cols());
    if (n_iters < 1 || k < 1) throw std::invalid_argument("rank_relieff: n_iters and k must be >= 1");

    int l = y.empty() ? 0 : *std::max_element(y.begin(), y.end()) + 1;
    std::vector<int> class_count(l, 0);
    for (int c : y) ++class_count[c];
    int present = 0;
    for (int c : class_count) present += (c > 0);
    if (present < 2) throw std::invalid_argument("rank_relieff: need at least 2 classes");

    Eigen::MatrixXd Xn = transform_minmax(fit_minmax(X), X);
    std::vector<double> prior(l);
    for (int c = 0; c < l; ++c) prior[c] = static_cast<double>(class_count[c]) / n;

    std::vector<double> weights(p, 0.0);
    Rng rng(mix_seed(seed, 2));
    std::uniform_int_distribution<int> pick(0, n - 1);

    std::vector<double> dist(n);
    std::vector<std::vector<std::pair<double, int>>> by_class(l);
    Eigen::VectorXd acc(p);

    for (int it = 0; it < n_iters; ++it) {
        int a = pick(rng);
        auto ra = Xn.row(a);
        for (int b = 0; b < n; ++b) dist[b] = (Xn.row(b) - ra).cwiseAbs().sum();

        for (auto& v : by_class) v.clear();
        for (int b = 0; b < n; ++b) {
            if (b == a) continue;
            by_class[y[b]].push_back({dist[b], b});
        }

        for (int c = 0; c < l; ++c) {
            auto& cand = by_class[c];
            if (cand.empty()) continue;
            int kc = std::min<int>(k, static_cast<int>(cand.size()));
            std::partial_sort(cand.begin(), cand.begin() + kc, cand.end());

            double factor;
            if (c == y[a]) {
                factor = -1.0 / (static_cast<double>(n_iters) * kc);
            } else {
                factor = prior[c] / (1.0 - prior[y[a]]) / (static_cast<double>(n_iters) * kc);
            }
            acc.setZero();
            for (int j = 0; j < kc; ++j) acc += (Xn.row(cand[j].second) - ra).cwiseAbs();
            for (int f = 0; f < p; ++f) weights[f] += factor * acc[f];
        }
    }
    return ranking_from_scores(std::move(weights), "relief");
}

Eigen::MatrixXd inffs_energy(const Eigen::MatrixXd& A, double r) {
    const Eigen::Index p = A.rows();
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(p, p) - r * A;
    return lhs.partialPivLu().solve(r * A);
}

FeatureRanking rank_inffs(const Eigen::MatrixXd& X, double alpha, double r) {
    const int p = static_cast<int>(X.cols());
    const int n = static_cast<int>(X.rows());
    if (p < 2) throw std::invalid_argument("rank_inffs: need at least 2 features");

    Eigen::MatrixXd Xn = transform_minmax(fit_minmax(X), X);
    Eigen::RowVectorXd mean = Xn.colwise().mean();
    Eigen::MatrixXd C = Xn.rowwise() - mean;
    Eigen::VectorXd sq_norm = C.colwise().squaredNorm();
    Eigen::VectorXd sigma = (sq_norm / n).cwiseSqrt();

    Eigen::MatrixXd gram = C.transpose() * C;
    Eigen::MatrixXd A(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            double denom = std::sqrt(sq_norm[i] * sq_norm[j]);
            double corr = denom > 0 ? gram(i, j) / denom : 0.0;
            A(i, j) = alpha * std::max(sigma[i], sigma[j]) +
                      (1.0 - alpha) * (1.0 - std::abs(corr));
        }
    }

    // Spectral radius by power iteration (A is nonnegative).
    Eigen::VectorXd v = Eigen::VectorXd::Ones(p);
    double rho = 0.0;
    for (int it = 0; it < 200; ++it) {
        Eigen::VectorXd w = A * v;
        rho = w.norm();
        if (rho == 0.0) break;
        v = w / rho;
    }
    if (r <= 0.0) {
        if (rho <= 0.0) throw std::invalid_argument("rank_inffs: zero affinity matrix");
        r = 0.9 / rho;
    } else if (r * rho >= 1.0) {
        throw std::invalid_argument("rank_inffs: r outside convergence region");
    }

    Eigen::MatrixXd S = inffs_energy(A, r);
    std::vector<double> scores(p);
    for (int i = 0; i < p; ++i) scores[i] = S.row(i).sum();
    return ranking_from_scores(std::move(scores), "inffs");
}

FeatureRanking rank_lasso(const Eigen::MatrixXd& X, const std::vector<int>& y,
                          double lambda, double tol, int max_iter) {
    if (lambda < 0) throw std::invalid_argument("rank_lasso: lambda must be >= 0");
    const int n = static_cast<int>(X.rows());
    const int p = static_cast<int>(X.cols());
    const int l = y.empty() ? 0 : *std::max_element(y.begin(), y.end()) + 1;

    // Standardize columns; constant columns get coefficient 0.
    Eigen::MatrixXd Xs = X;
    std::vector<bool> constant(p, false);
    for (int j = 0; j < p; ++j) {
        double mu = Xs.col(j).mean();
        Xs.col(j).array() -= mu;
        double sd = std::sqrt(Xs.col(j).squaredNorm() / n);
        if (sd > 0) {
            Xs.col(j) /= sd;
        } else {
            constant[j] = true;
        }
    }

    Eigen::MatrixXd G = (Xs.transpose() * Xs) / n;
    std::vector<double> scores(p, 0.0);
    bool all_converged = true;

    for (int c = 0; c < l; ++c) {
        Eigen::VectorXd yc(n);
        for (int i = 0; i < n; ++i) yc[i] = (y[i] == c) ? 1.0 : 0.0;
        yc.array() -= yc.mean();
        Eigen::VectorXd xy = Xs.transpose() * yc / n;

        Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
        bool converged = false;
        for (int sweep = 0; sweep < max_iter && !converged; ++sweep) {
            double max_delta = 0.0;
            for (int j = 0; j < p; ++j) {
                if (constant[j]) continue;
                double rho = xy[j] - (G.row(j).dot(w) - G(j, j) * w[j]);
                double w_new = soft_threshold(rho, lambda) / G(j, j);
                max_delta = std::max(max_delta, std::abs(w_new - w[j]));
                w[j] = w_new;
            }
            converged = max_delta < tol;
        }
        all_converged = all_converged && converged;
        for (int j = 0; j < p; ++j) scores[j] = std::max(scores[j], std::abs(w[j]));
    }

    FeatureRanking r = ranking_from_scores(std::move(scores), "lasso");
    r.converged = all_converged;
    return r;
}

std::vector<int> equal_frequency_bins(const Eigen::VectorXd& col, int n_bins) {
    const int n = static_cast<int>(col.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return col[a] < col[b]; });
    std::vector<int> bins(n);
    for (int rank = 0; rank < n; ++rank) {
        bins[idx[rank]] = static_cast<int>(static_cast<long long>(rank) * n_bins / n);
    }
    return bins;
}

double mutual_information(const std::vector<int>& a, int ca,
                          const std::vector<int>& b, int cb) {
    const int n = static_cast<int>(a.size());
    std::vector<double> joint(static_cast<std::size_t>(ca) * cb, 0.0);
    std::vector<double> pa(ca, 0.0), pb(cb, 0.0);
    for (int i = 0; i < n; ++i) {
        joint[static_cast<std::size_t>(a[i]) * cb + b[i]] += 1.0;
        pa[a[i]] += 1.0;
        pb[b[i]] += 1.0;
    }
    double mi = 0.0;
    for (int u = 0; u < ca; ++u) {
        for (int v = 0; v < cb; ++v) {
            double puv = joint[static_cast<std::size_t>(u) * cb + v] / n;
            if (puv > 0) mi += puv * std::log2(puv * n * n / (pa[u] * pb[v]));
        }
    }
    return mi;
}

FeatureRanking rank_mi(const Eigen::MatrixXd& X, const std::vector<int>& y,
                       int n_bins, double beta) {
    if (n_bins < 2) throw std::invalid_argument("rank_mi: n_bins must be >= 2");
    const int p = static_cast<int>(X.cols());
    const int l = y.empty() ? 0 : *std::max_element(y.begin(), y.end()) + 1;

    std::vector<std::vector<int>> bins(p);
    for (int j = 0; j < p; ++j) bins[j] = equal_frequency_bins(X.col(j), n_bins);

    std::vector<double> relevance(p);
    for (int j = 0; j < p; ++j) relevance[j] = mutual_information(bins[j], n_bins, y, l);

    FeatureRanking r;
    r.method = "cfmi_standin";
    r.scores.assign(p, 0.0);
    std::vector<bool> taken(p, false);
    std::vector<double> redundancy_sum(p, 0.0);

    for (int step = 0; step < p; ++step) {
        int best = -1;
        double best_val = 0.0;
        for (int j = 0; j < p; ++j) {
            if (taken[j]) continue;
            double val = relevance[j];
            if (step > 0) val -= beta * redundancy_sum[j] / step;
            if (best < 0 || val > best_val) {
                best = j;
                best_val = val;
            }
        }
        taken[best] = true;
        r.order.push_back(best);
        r.scores[best] = best_val;
        for (int j = 0; j < p; ++j) {
            if (!taken[j]) redundancy_sum[j] += mutual_information(bins[j], n_bins, bins[best], n_bins);
        }
    }
    return r;
}

FeatureRanking rank_ufsol(const Eigen::MatrixXd& X, int k, int n_triplets,
                          std::uint64_t seed) {
    const int n = static_cast<int>(X.rows());
    const int p = static_cast<int>(X.cols());
    if (n < k + 2) throw std::invalid_argument("rank_ufsol: need at least k+2 rows");

    // k nearest neighbors in the full space, computed in row blocks.
    Eigen::VectorXd sq = X.rowwise().squaredNorm();
    std::vector<std::vector<std::pair<double, int>>> nbrs(n);
    const int block = 256;
    for (int start = 0; start < n; start += block) {
        int rows = std::min(block, n - start);
        Eigen::MatrixXd D = -2.0 * X.middleRows(start, rows) * X.transpose();
        for (int i = 0; i < rows; ++i) {
            std::vector<std::pair<double, int>> cand;
            cand.reserve(n - 1);
            for (int j = 0; j < n; ++j) {
                if (j == start + i) continue;
                cand.push_back({std::max(0.0, D(i, j) + sq[start + i] + sq[j]), j});
            }
            std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
            cand.resize(k);
            nbrs[start + i] = std::move(cand);
        }
    }

    Rng rng(mix_seed(seed, 3));
    std::uniform_int_distribution<int> pick_row(0, n - 1);
    std::uniform_int_distribution<int> pick_nbr(0, k - 1);

    std::vector<double> matches(p, 0.0);
    int used = 0;
    for (int t = 0; t < n_triplets; ++t) {
        int a = pick_row(rng);
        int j1 = pick_nbr(rng);
        int j2 = pick_nbr(rng);
        if (j1 == j2) continue;
        int b = nbrs[a][j1].second;
        int c = nbrs[a][j2].second;
        int full_sign = sign_of(nbrs[a][j1].first - nbrs[a][j2].first);
        ++used;
        for (int f = 0; f < p; ++f) {
            double db = std::abs(X(a, f) - X(b, f));
            double dc = std::abs(X(a, f) - X(c, f));
            if (sign_of(db - dc) == full_sign) matches[f] += 1.0;
        }
    }
    if (used > 0) {
        for (double& m : matches) m /= used;
    }
    return ranking_from_scores(std::move(matches), "ufsol_standin");
}

std::vector<int> select_top(const FeatureRanking& r, int k) {
    if (k < 1 || k > static_cast<int>(r.order.size())) {
        throw std::invalid_argument("select_top: k out of range");
    }
    return {r.order.begin(), r.order.begin() + k};
}

void write_ranking_csv(const std::string& path, const FeatureRanking& r) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_ranking_csv: cannot open " + path);
    out << "feature,score,rank\n";
    for (std::size_t rank = 0; rank < r.order.size(); ++rank) {
        int f = r.order[rank];
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%zu\n", f, r.scores[f], rank + 1);
        out << buf;
    }
}

} // namespace gridbench
