#pragma once

#include "gridbench/evalcv.hpp"

#include <map>
#include <string>
#include <vector>

namespace gridbench {

// Full study configuration; serializable to/from JSON so a run is
// reproducible from its config file alone.
struct BenchConfig {
    std::vector<double> snr_list{10.0, 30.0, 70.0};
    std::vector<double> fr_list{1.0, 10.0};
    std::uint64_t seed = 42;
    int samples_per_class = 250;
    int n_buses = 118;
    int cv_folds = 10;
    std::vector<std::string> fs_methods{"inffs", "relief", "lasso", "ufsol_standin", "cfmi_standin"};
    std::vector<std::string> dr_methods{"pca", "lda", "mds", "lle"};
    std::vector<std::string> classifiers{"knn", "svm", "rf"};
    std::vector<int> fs_grid{1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 354};
    std::vector<int> dr_grid{1, 2, 3, 5, 8, 13, 21, 34, 55, 69};
    double sweep_min_gain = 0.005;
    int sweep_patience = 3;
    MethodParams params;
    std::string out_dir;
    int jobs = 1;
};

std::string config_to_json(const BenchConfig& c);
BenchConfig config_from_json(const std::string& text);

struct CombinationResult {
    std::string dataset_id;
    double snr_db = 0.0;
    double fr_ohm = 0.0;
    std::string scope;      // baseline | fs | dr
    std::string method;     // "baseline" or the FS/DR method name
    std::string classifier;
    int chosen_dim = 0;     // swept feature count or target dimension
    double accuracy = 0.0;
    double f1 = 0.0;
    double wall_time_s = 0.0; // informational; kept out of emitted reports
    bool error = false;
    std::string error_msg;
};

struct SweepResult {
    int chosen = 0;
    EvalReport report;
    int evaluations = 0;
    std::vector<std::pair<int, double>> trace; // (grid point, accuracy)
};

// Ascending evaluation of the k/d grid with early stop: quit once three
// consecutive points fail to improve the best accuracy by 0.005 absolute
// (both values configurable). Returns the argmax-accuracy point, ties to
// the smaller value.
SweepResult sweep_dimension(const std::string& method, bool is_fs,
                            const std::string& classifier, const Dataset& data,
                            std::vector<int> grid, const MethodParams& params,
                            int folds, std::uint64_t seed,
                            double min_gain = 0.005, int patience = 3);

Dataset build_config_dataset(const BenchConfig& c, double snr_db, double fr_ohm);

std::vector<CombinationResult> run_baseline(const BenchConfig& c);

// Baseline + FS x classifier + DR x classifier over every configured
// dataset. A failing cell is recorded with an error marker instead of
// aborting the batch. When c.out_dir is set, each finished cell is written
// to <out_dir>/cells/ and existing cell files are reused (resume).
std::vector<CombinationResult> run_matrix(const BenchConfig& c, bool resume = false);

struct RankedCombination {
    std::string method;
    std::string classifier;
    double accuracy = 0.0;
    double f1 = 0.0;
};

// Mean metric per (method, classifier) across datasets within one scope,
// descending; ties break lexicographically on "method-classifier".
std::vector<RankedCombination> rank_combinations(const std::vector<CombinationResult>& results,
                                                 const std::string& metric,
                                                 const std::string& scope);

struct GroupStats {
    double accuracy = 0.0;
    double f1 = 0.0;
    int count = 0;
};

struct TrendSummary {
    std::map<double, GroupStats> per_snr;
    std::map<double, GroupStats> per_fr;
    GroupStats baseline;
    GroupStats fs;
    GroupStats dr;
};

TrendSummary trend_summary(const std::vector<CombinationResult>& results);

// Writes the results table, one ranking table per scope x metric, and the
// trend summary, in each requested format ("csv", "md", "json"). Numbers
// are printed with 4 decimals; file content is deterministic.
void emit_report(const std::vector<CombinationResult>& results,
                 const std::vector<std::string>& formats, const std::string& out_dir);

std::string results_to_json(const std::vector<CombinationResult>& results);
std::vector<CombinationResult> results_from_json(const std::string& text);

std::string dataset_label(std::size_t index_in_grid);

} // namespace gridbench
