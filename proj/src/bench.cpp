#include "gridbench/bench.hpp"
#include "gridbench/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <thread>

namespace gridbench {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_num(double v, int decimals = 4) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string format_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

json params_to_json(const MethodParams& p) {
    return json{{"relieff_iters", p.relieff_iters},
                {"relieff_k", p.relieff_k},
                {"inffs_alpha", p.inffs_alpha},
                {"lasso_lambda", p.lasso_lambda},
                {"lasso_tol", p.lasso_tol},
                {"lasso_max_iter", p.lasso_max_iter},
                {"mi_bins", p.mi_bins},
                {"mi_beta", p.mi_beta},
                {"ufsol_k", p.ufsol_k},
                {"ufsol_triplets", p.ufsol_triplets},
                {"lda_shrinkage", p.lda_shrinkage},
                {"mds_landmarks", p.mds_landmarks},
                {"lle_k", p.lle_k},
                {"lle_reg", p.lle_reg},
                {"lle_subsample", p.lle_subsample},
                {"knn_k", p.knn_k},
                {"svm_c", p.svm.c},
                {"svm_epochs", p.svm.epochs},
                {"rf_trees", p.rf.n_trees},
                {"rf_max_depth", p.rf.max_depth},
                {"rf_mtry", p.rf.mtry},
                {"rf_min_leaf", p.rf.min_leaf},
                {"rf_bootstrap", p.rf.bootstrap}};
}

MethodParams params_from_json(const json& j) {
    MethodParams p;
    p.relieff_iters = j.value("relieff_iters", p.relieff_iters);
    p.relieff_k = j.value("relieff_k", p.relieff_k);
    p.inffs_alpha = j.value("inffs_alpha", p.inffs_alpha);
    p.lasso_lambda = j.value("lasso_lambda", p.lasso_lambda);
    p.lasso_tol = j.value("lasso_tol", p.lasso_tol);
    p.lasso_max_iter = j.value("lasso_max_iter", p.lasso_max_iter);
    p.mi_bins = j.value("mi_bins", p.mi_bins);
    p.mi_beta = j.value("mi_beta", p.mi_beta);
    p.ufsol_k = j.value("ufsol_k", p.ufsol_k);
    p.ufsol_triplets = j.value("ufsol_triplets", p.ufsol_triplets);
    p.lda_shrinkage = j.value("lda_shrinkage", p.lda_shrinkage);
    p.mds_landmarks = j.value("mds_landmarks", p.mds_landmarks);
    p.lle_k = j.value("lle_k", p.lle_k);
    p.lle_reg = j.value("lle_reg", p.lle_reg);
    p.lle_subsample = j.value("lle_subsample", p.lle_subsample);
    p.knn_k = j.value("knn_k", p.knn_k);
    p.svm.c = j.value("svm_c", p.svm.c);
    p.svm.epochs = j.value("svm_epochs", p.svm.epochs);
    p.rf.n_trees = j.value("rf_trees", p.rf.n_trees);
    p.rf.max_depth = j.value("rf_max_depth", p.rf.max_depth);
    p.rf.mtry = j.value("rf_mtry", p.rf.mtry);
    p.rf.min_leaf = j.value("rf_min_leaf", p.rf.min_leaf);
    p.rf.bootstrap = j.value("rf_bootstrap", p.rf.bootstrap);
    return p;
}

json result_to_json(const CombinationResult& r) {
    return json{{"dataset_id", r.dataset_id},
                {"snr_db", r.snr_db},
                {"fr_ohm", r.fr_ohm},
                {"scope", r.scope},
                {"method", r.method},
                {"classifier", r.classifier},
                {"chosen_dim", r.chosen_dim},
                {"accuracy", r.accuracy},
                {"f1", r.f1},
                {"wall_time_s", r.wall_time_s},
                {"error", r.error},
                {"error_msg", r.error_msg}};
}

CombinationResult result_from_json(const json& j) {
    CombinationResult r;
    r.dataset_id = j.at("dataset_id").get<std::string>();
    r.snr_db = j.at("snr_db").get<double>();
    r.fr_ohm = j.at("fr_ohm").get<double>();
    r.scope = j.at("scope").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.classifier = j.at("classifier").get<std::string>();
    r.chosen_dim = j.at("chosen_dim").get<int>();
    r.accuracy = j.at("accuracy").get<double>();
    r.f1 = j.at("f1").get<double>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    r.error = j.at("error").get<bool>();
    r.error_msg = j.at("error_msg").get<std::string>();
    return r;
}

int scope_order(const std::string& s) {
    if (s == "baseline") return 0;
    if (s == "fs") return 1;
    return 2;
}

void canonical_sort(std::vector<CombinationResult>& results) {
    std::sort(results.begin(), results.end(),
              [](const CombinationResult& a, const CombinationResult& b) {
                  if (a.dataset_id != b.dataset_id) {
                      if (a.dataset_id.size() != b.dataset_id.size()) {
                          return a.dataset_id.size() < b.dataset_id.size();
                      }
                      return a.dataset_id < b.dataset_id;
                  }
                  if (scope_order(a.scope) != scope_order(b.scope)) {
                      return scope_order(a.scope) < scope_order(b.scope);
                  }
                  if (a.method != b.method) return a.method < b.method;
                  return a.classifier < b.classifier;
              });
}

// Table rendering shared by csv and md so both carry identical content.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_table(const Table& t, const std::string& base_path,
                 const std::vector<std::string>& formats) {
    auto has = [&](const char* f) {
        return std::find(formats.begin(), formats.end(), f) != formats.end();
    };
    if (has("csv")) {
        std::ofstream out(base_path + ".csv");
        if (!out) throw std::runtime_error("emit_report: cannot open " + base_path + ".csv");
        for (std::size_t j = 0; j < t.header.size(); ++j) {
            out << t.header[j] << (j + 1 < t.header.size() ? ',' : '\n');
        }
        for (const auto& row : t.rows) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                out << row[j] << (j + 1 < row.size() ? ',' : '\n');
            }
        }
    }
    if (has("md")) {
        std::ofstream out(base_path + ".md");
        if (!out) throw std::runtime_error("emit_report: cannot open " + base_path + ".md");
        out << '|';
        for (const auto& h : t.header) out << ' ' << h << " |";
        out << "\n|";
        for (std::size_t j = 0; j < t.header.size(); ++j) out << " --- |";
        out << '\n';
        for (const auto& row : t.rows) {
            out << '|';
            for (const auto& cell : row) out << ' ' << cell << " |";
            out << '\n';
        }
    }
    if (has("json")) {
        json arr = json::array();
        for (const auto& row : t.rows) {
            json obj;
            for (std::size_t j = 0; j < t.header.size(); ++j) obj[t.header[j]] = row[j];
            arr.push_back(std::move(obj));
        }
        std::ofstream out(base_path + ".json");
        if (!out) throw std::runtime_error("emit_report: cannot open " + base_path + ".json");
        out << arr.dump(2) << '\n';
    }
}

} // namespace

std::string config_to_json(const BenchConfig& c) {
    json j{{"snr_list", c.snr_list},
           {"fr_list", c.fr_list},
           {"seed", c.seed},
           {"samples_per_class", c.samples_per_class},
           {"n_buses", c.n_buses},
           {"cv_folds", c.cv_folds},
           {"fs_methods", c.fs_methods},
           {"dr_methods", c.dr_methods},
           {"classifiers", c.classifiers},
           {"fs_grid", c.fs_grid},
           {"dr_grid", c.dr_grid},
           {"sweep_min_gain", c.sweep_min_gain},
           {"sweep_patience", c.sweep_patience},
           {"params", params_to_json(c.params)},
           {"out_dir", c.out_dir},
           {"jobs", c.jobs}};
    return j.dump(2);
}

BenchConfig config_from_json(const std::string& text) {
    json j = json::parse(text);
    BenchConfig c;
    c.snr_list = j.value("snr_list", c.snr_list);
    c.fr_list = j.value("fr_list", c.fr_list);
    c.seed = j.value("seed", c.seed);
    c.samples_per_class = j.value("samples_per_class", c.samples_per_class);
    c.n_buses = j.value("n_buses", c.n_buses);
    c.cv_folds = j.value("cv_folds", c.cv_folds);
    c.fs_methods = j.value("fs_methods", c.fs_methods);
    c.dr_methods = j.value("dr_methods", c.dr_methods);
    c.classifiers = j.value("classifiers", c.classifiers);
    c.fs_grid = j.value("fs_grid", c.fs_grid);
    c.dr_grid = j.value("dr_grid", c.dr_grid);
    c.sweep_min_gain = j.value("sweep_min_gain", c.sweep_min_gain);
    c.sweep_patience = j.value("sweep_patience", c.sweep_patience);
    if (j.contains("params")) c.params = params_from_json(j["params"]);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.jobs = j.value("jobs", c.jobs);
    if (c.snr_list.empty() || c.fr_list.empty() || c.classifiers.empty()) {
        throw std::invalid_argument("config: SNR/FR lists and classifier roster must be non-empty");
    }
    if (!std::is_sorted(c.fs_grid.begin(), c.fs_grid.end()) ||
        !std::is_sorted(c.dr_grid.begin(), c.dr_grid.end())) {
        throw std::invalid_argument("config: sweep grids must be sorted ascending");
    }
    return c;
}

std::string dataset_label(std::size_t index_in_grid) {
    return "D" + std::to_string(index_in_grid + 1);
}

Dataset build_config_dataset(const BenchConfig& c, double snr_db, double fr_ohm) {
    GridModel grid = build_topology(c.n_buses, c.seed);
    SeverityProfile profile;
    return build_dataset(grid, snr_db, fr_ohm, profile, c.seed, c.samples_per_class);
}

SweepResult sweep_dimension(const std::string& method, bool is_fs,
                            const std::string& classifier, const Dataset& data,
                            std::vector<int> grid, const MethodParams& params,
                            int folds, std::uint64_t seed,
                            double min_gain, int patience) {
    if (grid.empty()) throw std::invalid_argument("sweep_dimension: empty grid");
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const int n = static_cast<int>(data.X.rows());
    const int p = static_cast<int>(data.X.cols());
    const int min_train = n - (n + folds - 1) / folds;

    int limit = p;
    if (!is_fs) {
        if (method == "lda") limit = std::min(limit, data.n_classes - 1);
        limit = std::min(limit, min_train - 1);
        if (method == "mds") limit = std::min(limit, std::min(params.mds_landmarks, min_train) - 1);
        if (method == "lle") limit = std::min(limit, std::min(params.lle_subsample, min_train) - 2);
    }
    grid.erase(std::remove_if(grid.begin(), grid.end(),
                              [&](int g) { return g < 1 || g > limit; }),
               grid.end());
    if (grid.empty()) throw std::invalid_argument("sweep_dimension: no legal grid points");

    std::vector<int> fold_of = stratified_kfold(data.y, folds, seed);

    struct FoldCache {
        Eigen::MatrixXd train_x, test_x; // normalized
        std::vector<int> train_y, test_y;
        FeatureRanking ranking;
        Eigen::MatrixXd train_emb, test_emb; // reducer output at the largest d
    };
    std::vector<FoldCache> cache(folds);
    const int d_max = grid.back();

    for (int f = 0; f < folds; ++f) {
        std::vector<int> train_idx, test_idx;
        for (int i = 0; i < n; ++i) (fold_of[i] == f ? test_idx : train_idx).push_back(i);

        FoldCache& fc = cache[f];
        Eigen::MatrixXd train_raw = data.X(train_idx, Eigen::all);
        Normalizer norm = fit_minmax(train_raw);
        fc.train_x = transform_minmax(norm, train_raw);
        fc.test_x = transform_minmax(norm, data.X(test_idx, Eigen::all));
        fc.train_y.resize(train_idx.size());
        fc.test_y.resize(test_idx.size());
        for (std::size_t i = 0; i < train_idx.size(); ++i) fc.train_y[i] = data.y[train_idx[i]];
        for (std::size_t i = 0; i < test_idx.size(); ++i) fc.test_y[i] = data.y[test_idx[i]];

        if (is_fs) {
            fc.ranking = fit_ranking(method, fc.train_x, fc.train_y, params, seed);
        } else {
            // One fit at the largest d; smaller d are column prefixes.
            Reducer red = fit_reducer(method, fc.train_x, fc.train_y, d_max, params, seed);
            fc.train_emb = transform(red, fc.train_x);
            fc.test_emb = transform(red, fc.test_x);
        }
    }

    SweepResult result;
    double best_acc = -1.0;
    int stall = 0;

    for (int g : grid) {
        EvalReport report;
        report.cm.counts = Eigen::MatrixXi::Zero(data.n_classes, data.n_classes);
        for (int f = 0; f < folds; ++f) {
            const FoldCache& fc = cache[f];
            Eigen::MatrixXd train_sub, test_sub;
            if (is_fs) {
                std::vector<int> cols = select_top(fc.ranking, g);
                train_sub = fc.train_x(Eigen::all, cols);
                test_sub = fc.test_x(Eigen::all, cols);
            } else {
                train_sub = fc.train_emb.leftCols(g);
                test_sub = fc.test_emb.leftCols(g);
            }
            TrainedClassifier model = fit_classifier(classifier, train_sub, fc.train_y, params, seed);
            std::vector<int> pred = predict(model, test_sub);
            ConfusionMatrix cm = confusion(fc.test_y, pred, data.n_classes);
            report.per_fold.push_back(macro_metrics(cm));
            report.cm.counts += cm.counts;
        }
        for (const Metrics& m : report.per_fold) {
            report.aggregate.precision += m.precision / folds;
            report.aggregate.recall += m.recall / folds;
            report.aggregate.f1 += m.f1 / folds;
            report.aggregate.accuracy += m.accuracy / folds;
        }

        ++result.evaluations;
        double acc = report.aggregate.accuracy;
        result.trace.push_back({g, acc});
        if (acc >= best_acc + min_gain || best_acc < 0.0) {
            stall = 0;
        } else {
            ++stall;
        }
        if (acc > best_acc) {
            best_acc = acc;
            result.chosen = g;
            result.report = std::move(report);
        }
        if (stall >= patience) break;
    }
    return result;
}

namespace {

struct Cell {
    std::size_t ds_index;
    std::string scope;
    std::string method;
    std::string classifier;
};

std::string cell_file_name(const std::string& dataset_id, const Cell& cell) {
    return dataset_id + "_" + cell.scope + "_" + cell.method + "_" + cell.classifier + ".json";
}

std::vector<CombinationResult> run_cells(const BenchConfig& c,
                                         const std::vector<std::string>& scopes,
                                         bool resume) {
    struct DsSpec { double snr, fr; };
    std::vector<DsSpec> ds_specs;
    for (double snr : c.snr_list) {
        for (double fr : c.fr_list) ds_specs.push_back({snr, fr});
    }

    std::vector<Cell> cells;
    auto want = [&](const char* s) {
        return std::find(scopes.begin(), scopes.end(), s) != scopes.end();
    };
    for (std::size_t d = 0; d < ds_specs.size(); ++d) {
        if (want("baseline")) {
            for (const auto& clf : c.classifiers) cells.push_back({d, "baseline", "baseline", clf});
        }
        if (want("fs")) {
            for (const auto& m : c.fs_methods) {
                for (const auto& clf : c.classifiers) cells.push_back({d, "fs", m, clf});
            }
        }
        if (want("dr")) {
            for (const auto& m : c.dr_methods) {
                for (const auto& clf : c.classifiers) cells.push_back({d, "dr", m, clf});
            }
        }
    }

    fs::path cell_dir;
    if (!c.out_dir.empty()) {
        cell_dir = fs::path(c.out_dir) / "cells";
        fs::create_directories(cell_dir);
    }

    // Datasets are shared read-only across cells.
    std::vector<Dataset> datasets;
    datasets.reserve(ds_specs.size());
    for (const auto& spec : ds_specs) datasets.push_back(build_config_dataset(c, spec.snr, spec.fr));

    std::vector<CombinationResult> results(cells.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& cell = cells[i];
            std::string dataset_id = dataset_label(cell.ds_index);

            fs::path cell_path;
            if (!cell_dir.empty()) {
                cell_path = cell_dir / cell_file_name(dataset_id, cell);
                if (resume && fs::exists(cell_path)) {
                    std::ifstream in(cell_path);
                    results[i] = result_from_json(json::parse(in));
                    continue;
                }
            }

            CombinationResult r;
            r.dataset_id = dataset_id;
            r.snr_db = ds_specs[cell.ds_index].snr;
            r.fr_ohm = ds_specs[cell.ds_index].fr;
            r.scope = cell.scope;
            r.method = cell.method;
            r.classifier = cell.classifier;

            std::uint64_t cell_seed = fnv1a(dataset_id + "|" + cell.scope + "|" + cell.method +
                                                "|" + cell.classifier,
                                            mix_seed(c.seed, 7));
            auto t0 = std::chrono::steady_clock::now();
            try {
                const Dataset& data = datasets[cell.ds_index];
                if (cell.scope == "baseline") {
                    PipelineSpec spec;
                    spec.classifier = cell.classifier;
                    spec.params = c.params;
                    spec.seed = cell_seed;
                    EvalReport report = cross_validate(spec, data, c.cv_folds, cell_seed);
                    r.accuracy = report.aggregate.accuracy;
                    r.f1 = report.aggregate.f1;
                } else {
                    bool is_fs = cell.scope == "fs";
                    SweepResult sw = sweep_dimension(cell.method, is_fs, cell.classifier, data,
                                                     is_fs ? c.fs_grid : c.dr_grid, c.params,
                                                     c.cv_folds, cell_seed, c.sweep_min_gain,
                                                     c.sweep_patience);
                    r.chosen_dim = sw.chosen;
                    r.accuracy = sw.report.aggregate.accuracy;
                    r.f1 = sw.report.aggregate.f1;
                }
            } catch (const std::exception& e) {
                r.error = true;
                r.error_msg = e.what();
            }
            r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

            if (!cell_path.empty()) {
                std::ofstream out(cell_path);
                out << result_to_json(r).dump(2) << '\n';
            }
            results[i] = r;
        }
    };

    int jobs = std::max(1, c.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    canonical_sort(results);
    return results;
}

} // namespace

std::vector<CombinationResult> run_baseline(const BenchConfig& c) {
    return run_cells(c, {"baseline"}, false);
}

std::vector<CombinationResult> run_matrix(const BenchConfig& c, bool resume) {
    return run_cells(c, {"baseline", "fs", "dr"}, resume);
}

std::vector<RankedCombination> rank_combinations(const std::vector<CombinationResult>& results,
                                                 const std::string& metric,
                                                 const std::string& scope) {
    if (results.empty()) throw std::invalid_argument("rank_combinations: no results");
    std::map<std::pair<std::string, std::string>, GroupStats> groups;
    for (const auto& r : results) {
        if (r.error || r.scope != scope) continue;
        GroupStats& g = groups[{r.method, r.classifier}];
        g.accuracy += r.accuracy;
        g.f1 += r.f1;
        ++g.count;
    }
    std::vector<RankedCombination> out;
    for (const auto& [key, g] : groups) {
        out.push_back({key.first, key.second, g.accuracy / g.count, g.f1 / g.count});
    }
    bool by_f1 = metric == "f1";
    std::sort(out.begin(), out.end(), [&](const RankedCombination& a, const RankedCombination& b) {
        double va = by_f1 ? a.f1 : a.accuracy;
        double vb = by_f1 ? b.f1 : b.accuracy;
        if (va != vb) return va > vb;
        return a.method + "-" + a.classifier < b.method + "-" + b.classifier;
    });
    return out;
}

TrendSummary trend_summary(const std::vector<CombinationResult>& results) {
    TrendSummary t;
    auto add = [](GroupStats& g, const CombinationResult& r) {
        g.accuracy += r.accuracy;
        g.f1 += r.f1;
        ++g.count;
    };
    for (const auto& r : results) {
        if (r.error) continue;
        add(t.per_snr[r.snr_db], r);
        add(t.per_fr[r.fr_ohm], r);
        if (r.scope == "baseline") add(t.baseline, r);
        else if (r.scope == "fs") add(t.fs, r);
        else add(t.dr, r);
    }
    auto finish = [](GroupStats& g) {
        if (g.count > 0) {
            g.accuracy /= g.count;
            g.f1 /= g.count;
        }
    };
    for (auto& [_, g] : t.per_snr) finish(g);
    for (auto& [_, g] : t.per_fr) finish(g);
    finish(t.baseline);
    finish(t.fs);
    finish(t.dr);
    return t;
}

std::string results_to_json(const std::vector<CombinationResult>& results) {
    json arr = json::array();
    for (const auto& r : results) arr.push_back(result_to_json(r));
    return arr.dump(2);
}

std::vector<CombinationResult> results_from_json(const std::string& text) {
    json arr = json::parse(text);
    std::vector<CombinationResult> out;
    for (const auto& j : arr) out.push_back(result_from_json(j));
    return out;
}

void emit_report(const std::vector<CombinationResult>& results,
                 const std::vector<std::string>& formats, const std::string& out_dir) {
    fs::create_directories(out_dir);
    fs::path dir(out_dir);

    Table res;
    res.header = {"dataset", "snr_db", "fr_ohm", "scope", "method", "classifier",
                  "chosen", "accuracy", "f1", "error"};
    for (const auto& r : results) {
        res.rows.push_back({r.dataset_id, format_g(r.snr_db), format_g(r.fr_ohm), r.scope,
                            r.method, r.classifier, std::to_string(r.chosen_dim),
                            format_num(r.accuracy), format_num(r.f1),
                            r.error ? r.error_msg : ""});
    }
    write_table(res, (dir / "results").string(), formats);

    // Full-fidelity JSON alongside the table renderings.
    if (std::find(formats.begin(), formats.end(), "json") != formats.end()) {
        std::ofstream out(dir / "results_full.json");
        if (!out) throw std::runtime_error("emit_report: cannot open results_full.json");
        out << results_to_json(results) << '\n';
    }

    for (const std::string scope : {"fs", "dr"}) {
        for (const std::string metric : {"accuracy", "f1"}) {
            Table rank;
            rank.header = {"rank", "method", "classifier", "accuracy", "f1"};
            if (!results.empty()) {
                auto ranked = rank_combinations(results, metric, scope);
                for (std::size_t i = 0; i < ranked.size(); ++i) {
                    rank.rows.push_back({std::to_string(i + 1), ranked[i].method,
                                         ranked[i].classifier, format_num(ranked[i].accuracy),
                                         format_num(ranked[i].f1)});
                }
            }
            write_table(rank, (dir / ("ranking_" + scope + "_" + metric)).string(), formats);
        }
    }

    Table trends;
    trends.header = {"group", "key", "accuracy", "f1", "cells"};
    if (!results.empty()) {
        TrendSummary t = trend_summary(results);
        for (const auto& [snr, g] : t.per_snr) {
            trends.rows.push_back({"snr_db", format_g(snr), format_num(g.accuracy),
                                   format_num(g.f1), std::to_string(g.count)});
        }
        for (const auto& [fr, g] : t.per_fr) {
            trends.rows.push_back({"fr_ohm", format_g(fr), format_num(g.accuracy),
                                   format_num(g.f1), std::to_string(g.count)});
        }
        auto scope_row = [&](const char* name, const GroupStats& g) {
            trends.rows.push_back({"scope", name, format_num(g.accuracy), format_num(g.f1),
                                   std::to_string(g.count)});
        };
        scope_row("baseline", t.baseline);
        scope_row("fs", t.fs);
        scope_row("dr", t.dr);
    }
    write_table(trends, (dir / "trends").string(), formats);
}

} // namespace gridbench
