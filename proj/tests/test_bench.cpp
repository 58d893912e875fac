#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gridbench/bench.hpp"
#include "gridbench/rng.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace gridbench;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), {}};
}

BenchConfig tiny_config() {
    BenchConfig c;
    c.snr_list = {30.0};
    c.fr_list = {1.0};
    c.samples_per_class = 8;
    c.n_buses = 12;
    c.cv_folds = 4;
    c.fs_methods = {"relief", "lasso"};
    c.dr_methods = {"pca", "lda"};
    c.classifiers = {"knn"};
    c.fs_grid = {2, 5, 10};
    c.dr_grid = {1, 2, 3};
    c.params.knn_k = 3;
    return c;
}

CombinationResult make_result(const std::string& ds, double snr, double fr,
                              const std::string& scope, const std::string& method,
                              const std::string& clf, double acc, double f1) {
    CombinationResult r;
    r.dataset_id = ds;
    r.snr_db = snr;
    r.fr_ohm = fr;
    r.scope = scope;
    r.method = method;
    r.classifier = clf;
    r.accuracy = acc;
    r.f1 = f1;
    return r;
}

} // namespace

TEST_CASE("config json round trip and validation") {
    BenchConfig c = tiny_config();
    c.seed = 77;
    c.sweep_min_gain = 0.01;
    c.params.svm.c = 2.5;
    c.params.rf.n_trees = 13;
    BenchConfig back = config_from_json(config_to_json(c));
    CHECK(back.snr_list == c.snr_list);
    CHECK(back.fr_list == c.fr_list);
    CHECK(back.seed == 77);
    CHECK(back.samples_per_class == 8);
    CHECK(back.fs_methods == c.fs_methods);
    CHECK(back.fs_grid == c.fs_grid);
    CHECK(back.sweep_min_gain == 0.01);
    CHECK(back.params.svm.c == 2.5);
    CHECK(back.params.rf.n_trees == 13);

    CHECK_THROWS_AS(config_from_json(R"({"classifiers": []})"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(R"({"fs_grid": [5, 2]})"), std::invalid_argument);
    // Unknown keys are ignored, defaults fill in.
    BenchConfig d = config_from_json(R"({"bogus": 1})");
    CHECK(d.cv_folds == 10);
}

TEST_CASE("dataset labels follow the grid order") {
    CHECK(dataset_label(0) == "D1");
    CHECK(dataset_label(5) == "D6");
}

TEST_CASE("sweep stops after patience stalls on a flat accuracy curve") {
    // Every column is a copy of the one perfectly separating feature, so
    // accuracy is identical at every grid point: 1 improvement + 3 stalls.
    const int n = 40, p = 8;
    Dataset ds;
    ds.n_classes = 2;
    ds.X.resize(n, p);
    for (int i = 0; i < n; ++i) {
        ds.y.push_back(i % 2);
        double v = (i % 2) * 10.0 + (i / 2) * 0.01;
        for (int j = 0; j < p; ++j) ds.X(i, j) = v;
    }
    MethodParams params;
    params.knn_k = 3;
    SweepResult sw = sweep_dimension("relief", true, "knn", ds,
                                     {1, 2, 3, 4, 5, 6, 7, 8}, params, 4, 5);
    CHECK(sw.evaluations == 4);
    CHECK(sw.chosen == 1); // argmax ties resolve to the smallest grid point
    CHECK(sw.report.aggregate.accuracy == doctest::Approx(1.0));
    REQUIRE(sw.trace.size() == 4);
    for (const auto& [g, acc] : sw.trace) CHECK(acc == doctest::Approx(1.0));
}

TEST_CASE("sweep filters illegal grid points per method") {
    Dataset ds;
    const int n = 30, p = 10;
    ds.n_classes = 3;
    ds.X.resize(n, p);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        ds.y.push_back(i % 3);
        for (int j = 0; j < p; ++j) ds.X(i, j) = 3.0 * ((i % 3) == (j % 3)) + gauss(rng);
    }
    MethodParams params;
    params.knn_k = 3;
    // LDA caps d at l-1 = 2; points 5 and 10 are dropped.
    SweepResult sw = sweep_dimension("lda", false, "knn", ds, {1, 2, 5, 10}, params, 3, 5);
    CHECK(sw.evaluations <= 2);
    CHECK(sw.chosen <= 2);

    CHECK_THROWS_AS(sweep_dimension("lda", false, "knn", ds, {5, 10}, params, 3, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(sweep_dimension("pca", false, "knn", ds, {}, params, 3, 5),
                    std::invalid_argument);
}

TEST_CASE("matrix run covers every combination exactly once") {
    BenchConfig c = tiny_config();
    c.snr_list = {30.0, 10.0};
    std::vector<CombinationResult> results = run_matrix(c);
    // Per dataset: 1 baseline + 2 fs + 2 dr, one classifier each.
    const std::size_t per_ds = 1 + 2 + 2;
    CHECK(results.size() == per_ds * 2);

    std::set<std::string> keys;
    for (const auto& r : results) {
        CHECK_FALSE(r.error);
        CHECK(r.accuracy >= 0.0);
        CHECK(r.accuracy <= 1.0);
        keys.insert(r.dataset_id + "/" + r.scope + "/" + r.method + "/" + r.classifier);
        if (r.scope == "baseline") CHECK(r.chosen_dim == 0);
        else CHECK(r.chosen_dim >= 1);
    }
    CHECK(keys.size() == results.size());

    // Canonical order: datasets first, then baseline < fs < dr.
    CHECK(results.front().dataset_id == "D1");
    CHECK(results.front().scope == "baseline");
    CHECK(results.back().dataset_id == "D2");
    CHECK(results.back().scope == "dr");
}

TEST_CASE("runs are reproducible and resumable") {
    BenchConfig c = tiny_config();
    fs::path dir1 = fs::temp_directory_path() / "gb_run_a";
    fs::path dir2 = fs::temp_directory_path() / "gb_run_b";
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    c.out_dir = dir1.string();
    c.jobs = 2;
    std::vector<CombinationResult> a = run_matrix(c);
    c.out_dir = dir2.string();
    c.jobs = 1;
    std::vector<CombinationResult> b = run_matrix(c);

    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].accuracy == b[i].accuracy); // bit-equal despite thread count
        CHECK(a[i].f1 == b[i].f1);
        CHECK(a[i].chosen_dim == b[i].chosen_dim);
    }

    // Resume: poison one cell file, rerun with resume, the poisoned value
    // must be trusted (proves the cell was not recomputed).
    fs::path cell = dir1 / "cells" / "D1_baseline_baseline_knn.json";
    REQUIRE(fs::exists(cell));
    nlohmann::json j = nlohmann::json::parse(slurp(cell));
    j["accuracy"] = 0.4242;
    {
        std::ofstream out(cell);
        out << j.dump(2) << "\n";
    }
    c.out_dir = dir1.string();
    std::vector<CombinationResult> resumed = run_matrix(c, true);
    bool found = false;
    for (const auto& r : resumed) {
        if (r.scope == "baseline" && r.dataset_id == "D1") {
            CHECK(r.accuracy == 0.4242);
            found = true;
        }
    }
    CHECK(found);

    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("rank_combinations averages per method-classifier pair") {
    std::vector<CombinationResult> rs{
        make_result("D1", 10, 1, "fs", "relief", "knn", 0.8, 0.7),
        make_result("D2", 30, 1, "fs", "relief", "knn", 0.6, 0.5),
        make_result("D1", 10, 1, "fs", "lasso", "knn", 0.9, 0.9),
        make_result("D1", 10, 1, "dr", "pca", "knn", 0.99, 0.99), // other scope
    };
    auto ranked = rank_combinations(rs, "accuracy", "fs");
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0].method == "lasso");
    CHECK(ranked[0].accuracy == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(ranked[1].method == "relief");
    CHECK(ranked[1].accuracy == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(ranked[1].f1 == doctest::Approx(0.6).epsilon(1e-12));

    // Tie breaks lexicographically on method-classifier.
    std::vector<CombinationResult> tie{
        make_result("D1", 10, 1, "fs", "b", "knn", 0.5, 0.5),
        make_result("D1", 10, 1, "fs", "a", "knn", 0.5, 0.5),
    };
    auto tied = rank_combinations(tie, "accuracy", "fs");
    CHECK(tied[0].method == "a");

    CHECK_THROWS_AS(rank_combinations({}, "accuracy", "fs"), std::invalid_argument);
}

TEST_CASE("trend_summary groups by snr, fr and scope") {
    std::vector<CombinationResult> rs{
        make_result("D1", 10, 1, "baseline", "baseline", "knn", 0.5, 0.4),
        make_result("D2", 30, 1, "baseline", "baseline", "knn", 0.7, 0.6),
        make_result("D1", 10, 1, "fs", "relief", "knn", 0.9, 0.8),
    };
    TrendSummary t = trend_summary(rs);
    CHECK(t.per_snr.at(10.0).accuracy == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(t.per_snr.at(10.0).count == 2);
    CHECK(t.per_snr.at(30.0).accuracy == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(t.per_fr.at(1.0).count == 3);
    CHECK(t.baseline.accuracy == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(t.fs.accuracy == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(t.dr.count == 0);

    // Errored cells are excluded from every aggregate.
    CombinationResult bad = make_result("D1", 10, 1, "fs", "lasso", "knn", 0.0, 0.0);
    bad.error = true;
    rs.push_back(bad);
    TrendSummary t2 = trend_summary(rs);
    CHECK(t2.per_snr.at(10.0).count == 2);
}

TEST_CASE("results survive a json round trip including wall time") {
    std::vector<CombinationResult> rs{
        make_result("D1", 10, 1, "fs", "relief", "svm", 0.8125, 0.7734),
    };
    rs[0].chosen_dim = 13;
    rs[0].wall_time_s = 1.5;
    rs[0].error = false;
    std::vector<CombinationResult> back = results_from_json(results_to_json(rs));
    REQUIRE(back.size() == 1);
    CHECK(back[0].dataset_id == "D1");
    CHECK(back[0].accuracy == 0.8125);
    CHECK(back[0].f1 == 0.7734);
    CHECK(back[0].chosen_dim == 13);
    CHECK(back[0].wall_time_s == 1.5);
    CHECK(back[0].classifier == "svm");
}

TEST_CASE("csv and md reports carry identical cell content") {
    std::vector<CombinationResult> rs{
        make_result("D1", 10, 1, "baseline", "baseline", "knn", 0.51234, 0.42345),
        make_result("D1", 10, 1, "fs", "relief", "knn", 0.95, 0.94),
        make_result("D1", 10, 1, "dr", "pca", "rf", 0.85, 0.84),
    };
    rs[1].chosen_dim = 5;
    rs[0].wall_time_s = 777.25; // must not appear in any table

    fs::path dir = fs::temp_directory_path() / "gb_report_test";
    fs::remove_all(dir);
    emit_report(rs, {"csv", "md", "json"}, dir.string());

    for (const char* base : {"results", "ranking_fs_accuracy", "ranking_dr_f1", "trends"}) {
        std::string csv = slurp(dir / (std::string(base) + ".csv"));
        std::string md = slurp(dir / (std::string(base) + ".md"));
        CHECK(csv.find("777") == std::string::npos);
        CHECK(md.find("777") == std::string::npos);

        // Cell-by-cell comparison: csv row i == md row i+1 (separator line).
        std::vector<std::vector<std::string>> csv_cells, md_cells;
        std::stringstream cs(csv);
        std::string line;
        while (std::getline(cs, line)) {
            std::vector<std::string> row;
            std::size_t pos = 0;
            for (;;) { // manual split so trailing empty cells survive
                std::size_t comma = line.find(',', pos);
                row.push_back(line.substr(pos, comma - pos));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            csv_cells.push_back(row);
        }
        std::stringstream ms(md);
        int md_line = 0;
        while (std::getline(ms, line)) {
            if (md_line++ == 1) continue; // --- separator
            std::vector<std::string> row;
            std::size_t pos = 1;
            while (pos < line.size()) {
                std::size_t end = line.find(" |", pos);
                if (end == std::string::npos) break;
                std::string cell = line.substr(pos, end - pos);
                if (!cell.empty() && cell.front() == ' ') cell.erase(0, 1);
                row.push_back(cell);
                pos = end + 2;
            }
            md_cells.push_back(row);
        }
        REQUIRE(csv_cells.size() == md_cells.size());
        for (std::size_t i = 0; i < csv_cells.size(); ++i) CHECK(csv_cells[i] == md_cells[i]);
    }

    // Four-decimal formatting in the results table.
    std::string csv = slurp(dir / "results.csv");
    CHECK(csv.find("0.5123") != std::string::npos);
    CHECK(csv.find("0.51234") == std::string::npos);

    // JSON variants parse and carry the same rows.
    nlohmann::json rj = nlohmann::json::parse(slurp(dir / "results.json"));
    CHECK(rj.size() == 3);
    CHECK(rj[0].at("accuracy").get<std::string>() == "0.5123");
    nlohmann::json full = nlohmann::json::parse(slurp(dir / "results_full.json"));
    CHECK(full[0].at("wall_time_s").get<double>() == 777.25);

    fs::remove_all(dir);
}

TEST_CASE("two identical runs emit byte-identical reports") {
    BenchConfig c = tiny_config();
    fs::path dir1 = fs::temp_directory_path() / "gb_bytes_a";
    fs::path dir2 = fs::temp_directory_path() / "gb_bytes_b";
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    c.jobs = 2;
    emit_report(run_matrix(c), {"csv", "md"}, dir1.string());
    c.jobs = 1;
    emit_report(run_matrix(c), {"csv", "md"}, dir2.string());

    for (const char* f : {"results.csv", "results.md", "ranking_fs_accuracy.csv",
                          "ranking_dr_accuracy.csv", "trends.csv"}) {
        CHECK(slurp(dir1 / f) == slurp(dir2 / f));
    }
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}
