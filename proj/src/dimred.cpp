#include "gridbench/dimred.hpp"
#include "gridbench/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gridbench {

namespace {

using nlohmann::json;

// Largest-magnitude entry of each column made positive, for reproducible
// eigenvector orientation.
void fix_signs(Eigen::MatrixXd& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Eigen::Index imax;
        m.col(j).cwiseAbs().maxCoeff(&imax);
        if (m(imax, j) < 0) m.col(j) = -m.col(j);
    }
}

std::vector<int> seeded_subsample(int n, int m, std::uint64_t seed, std::uint64_t stream) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    if (m < n) {
        Rng rng(mix_seed(seed, stream));
        std::shuffle(idx.begin(), idx.end(), rng);
        idx.resize(m);
        std::sort(idx.begin(), idx.end());
    }
    return idx;
}

std::vector<int> nearest_rows(const Eigen::MatrixXd& basis, const Eigen::RowVectorXd& point,
                              int k, int exclude = -1) {
    std::vector<std::pair<double, int>> cand;
    cand.reserve(basis.rows());
    for (int j = 0; j < basis.rows(); ++j) {
        if (j == exclude) continue;
        cand.push_back({(basis.row(j) - point).squaredNorm(), j});
    }
    int kk = std::min<int>(k, static_cast<int>(cand.size()));
    std::partial_sort(cand.begin(), cand.begin() + kk, cand.end());
    std::vector<int> out(kk);
    for (int j = 0; j < kk; ++j) out[j] = cand[j].second;
    return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    Eigen::MatrixXd m(j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
    const auto& data = j.at("data");
    Eigen::Index idx = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = data[idx++].get<double>();
    }
    return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
    Eigen::VectorXd v(j.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j[i].get<double>();
    return v;
}

} // namespace

std::string reducer_kind_name(ReducerKind k) {
    switch (k) {
    case ReducerKind::PCA: return "pca";
    case ReducerKind::LDA: return "lda";
    case ReducerKind::MDS: return "mds";
    case ReducerKind::LLE: return "lle";
    }
    return "?";
}

Reducer fit_pca(const Eigen::MatrixXd& X, int d) {
    const Eigen::Index n = X.rows(), p = X.cols();
    if (d < 1 || d > std::min<Eigen::Index>(n - 1, p)) {
        throw std::invalid_argument("fit_pca: d out of range");
    }
    Reducer r;
    r.kind = ReducerKind::PCA;
    r.d = d;
    r.mean = X.colwise().mean();
    Eigen::MatrixXd C = X.rowwise() - r.mean.transpose();
    Eigen::MatrixXd cov = C.transpose() * C / static_cast<double>(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success) throw std::runtime_error("fit_pca: eigendecomposition failed");

    r.projection.resize(p, d);
    r.eigenvalues.resize(d);
    for (int j = 0; j < d; ++j) { // eigenvalues come back ascending
        r.projection.col(j) = es.eigenvectors().col(p - 1 - j);
        r.eigenvalues[j] = es.eigenvalues()[p - 1 - j];
    }
    fix_signs(r.projection);
    return r;
}

Reducer fit_lda(const Eigen::MatrixXd& X, const std::vector<int>& y, int d,
                double shrinkage) {
    const Eigen::Index n = X.rows(), p = X.cols();
    const int l = y.empty() ? 0 : *std::max_element(y.begin(), y.end()) + 1;
    if (d < 1 || d > l - 1) throw std::invalid_argument("fit_lda: d must be in [1, l-1]");

    std::vector<int> count(l, 0);
    for (int c : y) ++count[c];
    for (int c = 0; c < l; ++c) {
        if (count[c] < 2) throw std::invalid_argument("fit_lda: every class needs >= 2 rows");
    }

    Eigen::VectorXd mean = X.colwise().mean();
    Eigen::MatrixXd class_mean = Eigen::MatrixXd::Zero(l, p);
    for (Eigen::Index i = 0; i < n; ++i) class_mean.row(y[i]) += X.row(i);
    for (int c = 0; c < l; ++c) class_mean.row(c) /= count[c];

    Eigen::MatrixXd sw = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::RowVectorXd dev = X.row(i) - class_mean.row(y[i]);
        sw.noalias() += dev.transpose() * dev;
    }
    Eigen::MatrixXd sb = Eigen::MatrixXd::Zero(p, p);
    for (int c = 0; c < l; ++c) {
        Eigen::RowVectorXd dev = class_mean.row(c) - mean.transpose();
        sb.noalias() += count[c] * dev.transpose() * dev;
    }
    sw.diagonal().array() += shrinkage * sw.trace() / static_cast<double>(p);

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(sb, sw);
    if (es.info() != Eigen::Success) throw std::runtime_error("fit_lda: regularized S_w is singular");

    Reducer r;
    r.kind = ReducerKind::LDA;
    r.d = d;
    r.mean = mean;
    r.projection.resize(p, d);
    for (int j = 0; j < d; ++j) {
        Eigen::VectorXd v = es.eigenvectors().col(p - 1 - j);
        r.projection.col(j) = v / v.norm();
    }
    fix_signs(r.projection);
    return r;
}

Reducer fit_mds(const Eigen::MatrixXd& X, int d, int n_landmarks, std::uint64_t seed) {
    const int n = static_cast<int>(X.rows());
    n_landmarks = std::min(n_landmarks, n);
    if (d < 1 || d > n_landmarks - 1) throw std::invalid_argument("fit_mds: need d <= n_landmarks - 1 <= n - 1");

    std::vector<int> idx = seeded_subsample(n, n_landmarks, seed, 4);
    const int m = static_cast<int>(idx.size());

    Reducer r;
    r.kind = ReducerKind::MDS;
    r.d = d;
    r.landmarks.resize(m, X.cols());
    for (int i = 0; i < m; ++i) r.landmarks.row(i) = X.row(idx[i]);

    std::set<std::vector<double>> distinct;
    for (int i = 0; i < m; ++i) {
        distinct.insert({r.landmarks.row(i).begin(), r.landmarks.row(i).end()});
    }
    if (static_cast<int>(distinct.size()) < d + 1) {
        throw std::runtime_error("fit_mds: fewer distinct landmarks than d+1");
    }

    Eigen::VectorXd sq = r.landmarks.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = (-2.0 * r.landmarks * r.landmarks.transpose()).colwise() + sq;
    d2.rowwise() += sq.transpose();
    d2 = d2.cwiseMax(0.0);

    Eigen::VectorXd row_mean = d2.rowwise().mean();
    double grand = row_mean.mean();
    Eigen::MatrixXd b = -0.5 * (((d2.colwise() - row_mean).rowwise() - row_mean.transpose()).array() + grand).matrix();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    if (es.info() != Eigen::Success) throw std::runtime_error("fit_mds: eigendecomposition failed");

    Eigen::MatrixXd v(m, d);
    r.landmark_eigenvalues.resize(d);
    for (int j = 0; j < d; ++j) {
        v.col(j) = es.eigenvectors().col(m - 1 - j);
        r.landmark_eigenvalues[j] = std::max(0.0, es.eigenvalues()[m - 1 - j]);
    }
    fix_signs(v);
    r.landmark_embedding = v * r.landmark_eigenvalues.cwiseSqrt().asDiagonal();
    r.landmark_sqdist_mean = row_mean;
    return r;
}

Eigen::VectorXd lle_weights(const Eigen::MatrixXd& basis, const std::vector<int>& nbr,
                            const Eigen::RowVectorXd& point, double reg) {
    const int k = static_cast<int>(nbr.size());
    Eigen::MatrixXd diff(k, point.size());
    for (int j = 0; j < k; ++j) diff.row(j) = basis.row(nbr[j]) - point;
    Eigen::MatrixXd gram = diff * diff.transpose();
    double tr = gram.trace();
    gram.diagonal().array() += (tr > 0 ? reg * tr : reg);

    Eigen::VectorXd w = gram.ldlt().solve(Eigen::VectorXd::Ones(k));
    double s = w.sum();
    if (s == 0.0 || !std::isfinite(s)) {
        w.setConstant(1.0 / k);
    } else {
        w /= s;
    }
    return w;
}

Reducer fit_lle(const Eigen::MatrixXd& X, int d, int k, double reg,
                int n_subsample, std::uint64_t seed) {
    const int n = static_cast<int>(X.rows());
    n_subsample = std::min(n_subsample, n);
    if (k <= d) throw std::invalid_argument("fit_lle: need k > d");
    if (n_subsample < k + 1) throw std::invalid_argument("fit_lle: need n_subsample >= k+1");

    std::vector<int> idx = seeded_subsample(n, n_subsample, seed, 5);
    const int m = static_cast<int>(idx.size());

    Reducer r;
    r.kind = ReducerKind::LLE;
    r.d = d;
    r.k = k;
    r.reg = reg;
    r.fitted_points.resize(m, X.cols());
    for (int i = 0; i < m; ++i) r.fitted_points.row(i) = X.row(idx[i]);

    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        std::vector<int> nbr = nearest_rows(r.fitted_points, r.fitted_points.row(i), k, i);
        Eigen::VectorXd wi = lle_weights(r.fitted_points, nbr, r.fitted_points.row(i), reg);
        for (std::size_t j = 0; j < nbr.size(); ++j) w(i, nbr[j]) = wi[j];
    }

    Eigen::MatrixXd iw = Eigen::MatrixXd::Identity(m, m) - w;
    Eigen::MatrixXd cost = iw.transpose() * iw;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cost);
    if (es.info() != Eigen::Success) throw std::runtime_error("fit_lle: eigendecomposition failed");

    // Drop the constant bottom eigenvector; keep the next d.
    r.fitted_embedding = es.eigenvectors().middleCols(1, d);
    fix_signs(r.fitted_embedding);
    return r;
}

Eigen::MatrixXd transform(const Reducer& r, const Eigen::MatrixXd& X) {
    switch (r.kind) {
    case ReducerKind::PCA:
    case ReducerKind::LDA: {
        if (X.cols() != r.projection.rows()) throw std::invalid_argument("transform: column count mismatch");
        return (X.rowwise() - r.mean.transpose()) * r.projection;
    }
    case ReducerKind::MDS: {
        if (X.cols() != r.landmarks.cols()) throw std::invalid_argument("transform: column count mismatch");
        const int m = static_cast<int>(r.landmarks.rows());
        Eigen::MatrixXd vscaled(m, r.d); // V * Lambda^{-1/2}
        for (int j = 0; j < r.d; ++j) {
            double lam = r.landmark_eigenvalues[j];
            vscaled.col(j) = lam > 1e-12 ? (r.landmark_embedding.col(j) / lam).eval()
                                         : Eigen::VectorXd::Zero(m);
        }
        Eigen::MatrixXd out(X.rows(), r.d);
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            Eigen::VectorXd delta = (r.landmarks.rowwise() - X.row(i)).rowwise().squaredNorm();
            out.row(i) = -0.5 * (vscaled.transpose() * (delta - r.landmark_sqdist_mean)).transpose();
        }
        return out;
    }
    case ReducerKind::LLE: {
        if (X.cols() != r.fitted_points.cols()) throw std::invalid_argument("transform: column count mismatch");
        Eigen::MatrixXd out(X.rows(), r.d);
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            std::vector<int> nbr = nearest_rows(r.fitted_points, X.row(i), r.k);
            Eigen::VectorXd wi = lle_weights(r.fitted_points, nbr, X.row(i), r.reg);
            Eigen::RowVectorXd emb = Eigen::RowVectorXd::Zero(r.d);
            for (std::size_t j = 0; j < nbr.size(); ++j) emb += wi[j] * r.fitted_embedding.row(nbr[j]);
            out.row(i) = emb;
        }
        return out;
    }
    }
    throw std::logic_error("transform: unknown reducer kind");
}

Reducer head(const Reducer& r, int d_head) {
    if (d_head < 1 || d_head > r.d) throw std::invalid_argument("head: d out of range");
    Reducer out = r;
    out.d = d_head;
    if (out.projection.size() > 0) out.projection = r.projection.leftCols(d_head).eval();
    if (out.eigenvalues.size() > 0) out.eigenvalues = r.eigenvalues.head(d_head).eval();
    if (out.landmark_embedding.size() > 0) {
        out.landmark_embedding = r.landmark_embedding.leftCols(d_head).eval();
        out.landmark_eigenvalues = r.landmark_eigenvalues.head(d_head).eval();
    }
    if (out.fitted_embedding.size() > 0) out.fitted_embedding = r.fitted_embedding.leftCols(d_head).eval();
    return out;
}

std::string reducer_to_json(const Reducer& r) {
    json j{{"version", 1},
           {"kind", reducer_kind_name(r.kind)},
           {"d", r.d},
           {"k", r.k},
           {"reg", r.reg},
           {"mean", vector_to_json(r.mean)},
           {"projection", matrix_to_json(r.projection)},
           {"eigenvalues", vector_to_json(r.eigenvalues)},
           {"landmarks", matrix_to_json(r.landmarks)},
           {"landmark_embedding", matrix_to_json(r.landmark_embedding)},
           {"landmark_eigenvalues", vector_to_json(r.landmark_eigenvalues)},
           {"landmark_sqdist_mean", vector_to_json(r.landmark_sqdist_mean)},
           {"fitted_points", matrix_to_json(r.fitted_points)},
           {"fitted_embedding", matrix_to_json(r.fitted_embedding)}};
    return j.dump();
}

Reducer reducer_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("version").get<int>() != 1) throw std::runtime_error("reducer_from_json: unknown version");
    Reducer r;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "pca") r.kind = ReducerKind::PCA;
    else if (kind == "lda") r.kind = ReducerKind::LDA;
    else if (kind == "mds") r.kind = ReducerKind::MDS;
    else if (kind == "lle") r.kind = ReducerKind::LLE;
    else throw std::runtime_error("reducer_from_json: unknown kind " + kind);
    r.d = j.at("d").get<int>();
    r.k = j.at("k").get<int>();
    r.reg = j.at("reg").get<double>();
    r.mean = vector_from_json(j.at("mean"));
    r.projection = matrix_from_json(j.at("projection"));
    r.eigenvalues = vector_from_json(j.at("eigenvalues"));
    r.landmarks = matrix_from_json(j.at("landmarks"));
    r.landmark_embedding = matrix_from_json(j.at("landmark_embedding"));
    r.landmark_eigenvalues = vector_from_json(j.at("landmark_eigenvalues"));
    r.landmark_sqdist_mean = vector_from_json(j.at("landmark_sqdist_mean"));
    r.fitted_points = matrix_from_json(j.at("fitted_points"));
    r.fitted_embedding = matrix_from_json(j.at("fitted_embedding"));
    return r;
}

} // namespace gridbench
