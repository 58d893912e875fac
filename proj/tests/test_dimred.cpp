#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gridbench/dimred.hpp"
#include "gridbench/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace gridbench;

namespace {

Eigen::MatrixXd gaussian_cloud(int n, int p, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd X(n, p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) X(i, j) = gauss(rng);
    }
    return X;
}

double spearman(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const int n = static_cast<int>(a.size());
    auto ranks = [n](const Eigen::VectorXd& v) {
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int x, int y) { return v[x] < v[y]; });
        Eigen::VectorXd r(n);
        for (int i = 0; i < n; ++i) r[idx[i]] = i;
        return r;
    };
    Eigen::VectorXd ra = ranks(a), rb = ranks(b);
    ra.array() -= ra.mean();
    rb.array() -= rb.mean();
    return ra.dot(rb) / std::sqrt(ra.squaredNorm() * rb.squaredNorm());
}

} // namespace

TEST_CASE("pca matches a direct eigendecomposition of the covariance") {
    Eigen::MatrixXd X = gaussian_cloud(60, 4, 9);
    X.col(0) *= 5.0; // dominant direction along axis 0
    Reducer r = fit_pca(X, 3);

    // Oracle: covariance eigenvectors straight from Eigen on the explicit
    // covariance matrix, independent of the fit path.
    Eigen::MatrixXd C = X.rowwise() - X.colwise().mean();
    Eigen::MatrixXd cov = C.transpose() * C / (X.rows() - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);

    for (int j = 0; j < 3; ++j) {
        Eigen::VectorXd want = es.eigenvectors().col(3 - j); // descending
        Eigen::VectorXd got = r.projection.col(j);
        CHECK(std::abs(std::abs(want.dot(got)) - 1.0) < 1e-9);
        CHECK(r.eigenvalues[j] == doctest::Approx(es.eigenvalues()[3 - j]).epsilon(1e-9));
        if (j > 0) CHECK(r.eigenvalues[j] <= r.eigenvalues[j - 1]);
        // Sign convention: largest-magnitude entry positive.
        int arg = 0;
        got.cwiseAbs().maxCoeff(&arg);
        CHECK(got[arg] > 0.0);
    }

    // Transform = centered projection.
    Eigen::MatrixXd T = transform(r, X);
    CHECK((T - C * r.projection).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("lda recovers the fisher direction of two tilted gaussians") {
    // Classes separated along (1,1)/sqrt(2) with isotropic within-class
    // scatter: the Fisher direction is the separation axis itself.
    Rng rng(15);
    std::normal_distribution<double> gauss(0.0, 0.3);
    const int n = 400;
    Eigen::MatrixXd X(n, 2);
    std::vector<int> y(n);
    for (int i = 0; i < n; ++i) {
        y[i] = i % 2;
        double c = y[i] ? 2.0 : -2.0;
        X(i, 0) = c / std::sqrt(2.0) + gauss(rng);
        X(i, 1) = c / std::sqrt(2.0) + gauss(rng);
    }
    Reducer r = fit_lda(X, y, 1);
    Eigen::Vector2d fisher(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    double cosine = std::abs(r.projection.col(0).normalized().dot(fisher));
    // Within 5 degrees of the analytic direction.
    CHECK(cosine > std::cos(5.0 * M_PI / 180.0));

    // Projected classes must separate cleanly.
    Eigen::MatrixXd T = transform(r, X);
    double m0 = 0, m1 = 0;
    for (int i = 0; i < n; ++i) (y[i] ? m1 : m0) += T(i, 0) / (n / 2);
    CHECK(std::abs(m1 - m0) > 2.0);
}

TEST_CASE("mds reproduces a 3-4-5 right triangle") {
    // Pairwise distances 3, 4, 5 embed exactly in 2D.
    Eigen::MatrixXd X(3, 5);
    X.setZero();
    X(1, 0) = 3.0;
    X(2, 1) = 4.0;
    Reducer r = fit_mds(X, 2, 3, 1);
    Eigen::MatrixXd E = transform(r, X);
    auto dist = [&](int a, int b) { return (E.row(a) - E.row(b)).norm(); };
    CHECK(dist(0, 1) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(dist(0, 2) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(dist(1, 2) == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("landmark mds is exact on euclidean data") {
    Eigen::MatrixXd X = gaussian_cloud(300, 3, 21);
    Reducer r = fit_mds(X, 3, 80, 4);
    Eigen::MatrixXd E = transform(r, X);

    // All pairwise distances preserved, including non-landmark rows.
    double rmse = 0;
    int pairs = 0;
    for (int i = 0; i < 300; i += 7) {
        for (int j = i + 1; j < 300; j += 11) {
            double orig = (X.row(i) - X.row(j)).norm();
            double emb = (E.row(i) - E.row(j)).norm();
            rmse += (orig - emb) * (orig - emb);
            ++pairs;
        }
    }
    CHECK(std::sqrt(rmse / pairs) < 1e-6);

    // Degenerate landmark set: fewer distinct points than d+1.
    Eigen::MatrixXd flat = Eigen::MatrixXd::Zero(10, 3);
    CHECK_THROWS_AS(fit_mds(flat, 2, 10, 1), std::runtime_error);
}

TEST_CASE("lle weights are affine and the embedding unrolls a curve") {
    Eigen::MatrixXd X = gaussian_cloud(20, 3, 33);
    std::vector<int> nbr{1, 4, 7, 9};
    Eigen::VectorXd w = lle_weights(X, nbr, X.row(0), 1e-3);
    CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-9));

    // Noisy arc: the 1D LLE coordinate must be monotone in arc length.
    const int n = 250;
    Eigen::MatrixXd arc(n, 2);
    Rng rng(3);
    std::normal_distribution<double> gauss(0.0, 0.01);
    for (int i = 0; i < n; ++i) {
        double t = 2.5 * i / n;
        arc(i, 0) = std::cos(t) + gauss(rng);
        arc(i, 1) = std::sin(t) + gauss(rng);
    }
    Reducer r = fit_lle(arc, 1, 8, 1e-3, n, 5);
    Eigen::MatrixXd E = transform(r, arc);
    Eigen::VectorXd t_true(n);
    for (int i = 0; i < n; ++i) t_true[i] = i;
    CHECK(std::abs(spearman(E.col(0), t_true)) > 0.95);

    // Bottom eigen-direction check: the stored embedding has near-zero
    // reconstruction cost, i.e. rows are reproduced by their own weights.
    Eigen::VectorXd col = r.fitted_embedding.col(0);
    CHECK(col.norm() == doctest::Approx(1.0).epsilon(1e-9)); // unit eigenvector
    CHECK(std::abs(col.sum()) < 1e-4); // near-orthogonal to the constant mode
}

TEST_CASE("head restricts a fit to a column prefix for every method") {
    Eigen::MatrixXd X = gaussian_cloud(120, 6, 77);
    std::vector<int> y(120);
    for (int i = 0; i < 120; ++i) y[i] = i % 4;

    std::vector<Reducer> fits{
        fit_pca(X, 4),
        fit_lda(X, y, 3),
        fit_mds(X, 4, 60, 2),
        fit_lle(X, 4, 10, 1e-3, 80, 2),
    };
    for (const Reducer& full : fits) {
        Eigen::MatrixXd big = transform(full, X);
        for (int d = 1; d < full.d; ++d) {
            Reducer cut = head(full, d);
            CHECK(cut.d == d);
            Eigen::MatrixXd small = transform(cut, X);
            CHECK((small - big.leftCols(d)).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
}

TEST_CASE("reducers round-trip through json") {
    Eigen::MatrixXd X = gaussian_cloud(50, 4, 8);
    std::vector<int> y(50);
    for (int i = 0; i < 50; ++i) y[i] = i % 3;
    std::vector<Reducer> fits{
        fit_pca(X, 2),
        fit_lda(X, y, 2),
        fit_mds(X, 2, 30, 6),
        fit_lle(X, 2, 6, 1e-3, 40, 6),
    };
    for (const Reducer& r : fits) {
        Reducer back = reducer_from_json(reducer_to_json(r));
        CHECK(back.kind == r.kind);
        CHECK(back.d == r.d);
        Eigen::MatrixXd a = transform(r, X);
        Eigen::MatrixXd b = transform(back, X);
        CHECK(a == b);
    }
}
