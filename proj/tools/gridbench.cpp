#include "gridbench/bench.hpp"
#include "gridbench/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace gridbench;

namespace {

std::vector<std::string> split_formats(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int cmd_generate(const std::vector<double>& snr_list, const std::vector<double>& fr_list,
                 std::uint64_t seed, int samples, int buses, const std::string& out_dir) {
    fs::create_directories(out_dir);
    GridModel grid = build_topology(buses, seed);
    SeverityProfile profile;
    std::size_t index = 0;
    for (double snr : snr_list) {
        for (double fr : fr_list) {
            Dataset ds = build_dataset(grid, snr, fr, profile, seed, samples);
            std::string path = (fs::path(out_dir) / (dataset_label(index) + ".csv")).string();
            write_dataset_csv(path, ds, scenario_roster(grid, fr));
            std::cout << dataset_label(index) << ": snr=" << snr << " dB, fr=" << fr
                      << " ohm, " << ds.X.rows() << "x" << ds.X.cols() << " -> " << path << "\n";
            ++index;
        }
    }
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, bool resume,
            int jobs, bool print_config) {
    BenchConfig config;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config " << config_path << "\n";
            return 1;
        }
        config = config_from_json({std::istreambuf_iterator<char>(in), {}});
    }
    if (print_config) {
        std::cout << config_to_json(config) << "\n";
        return 0;
    }
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (config.out_dir.empty()) {
        std::cerr << "run: --out (or out_dir in the config) is required\n";
        return 1;
    }
    if (jobs > 0) config.jobs = jobs;

    fs::create_directories(config.out_dir);
    {
        std::ofstream out(fs::path(config.out_dir) / "config.json");
        out << config_to_json(config) << "\n";
    }

    std::vector<CombinationResult> results = run_matrix(config, resume);
    emit_report(results, {"csv", "md", "json"}, config.out_dir);

    int errors = 0;
    for (const auto& r : results) {
        if (r.error) {
            ++errors;
            std::cerr << "cell failed: " << r.dataset_id << " " << r.method << "+"
                      << r.classifier << ": " << r.error_msg << "\n";
        }
    }
    std::cout << results.size() << " cells (" << errors << " failed), reports in "
              << config.out_dir << "\n";
    return 0;
}

int cmd_report(const std::string& in_dir, const std::string& format_list) {
    fs::path cells = fs::path(in_dir) / "cells";
    if (!fs::is_directory(cells)) {
        std::cerr << "report: no cells directory under " << in_dir << "\n";
        return 1;
    }
    std::vector<CombinationResult> results;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(cells)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        std::ifstream in(f);
        auto parsed = results_from_json("[" + std::string{std::istreambuf_iterator<char>(in), {}} + "]");
        results.insert(results.end(), parsed.begin(), parsed.end());
    }
    std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
        auto key = [](const CombinationResult& r) {
            return std::tuple{r.dataset_id.size(), r.dataset_id, r.scope, r.method, r.classifier};
        };
        return key(a) < key(b);
    });
    emit_report(results, split_formats(format_list), in_dir);
    std::cout << "reports for " << results.size() << " cells written to " << in_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power-grid fault-diagnosis benchmark: dataset generation, "
                 "FS/DR-classifier study runner, report emission"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "Synthesize labeled fault datasets (CSV + JSON sidecar)");
    std::vector<double> snr_list{10.0, 30.0, 70.0};
    std::vector<double> fr_list{1.0, 10.0};
    std::uint64_t seed = 42;
    int samples = 250, buses = 118;
    std::string gen_out;
    gen->add_option("--snr", snr_list, "SNR levels in dB")->capture_default_str();
    gen->add_option("--fr", fr_list, "Fault resistances in ohm")->capture_default_str();
    gen->add_option("--seed", seed, "Base seed")->capture_default_str();
    gen->add_option("--samples", samples, "Samples per scenario")->capture_default_str();
    gen->add_option("--buses", buses, "Bus count")->capture_default_str();
    gen->add_option("--out", gen_out, "Output directory")->required();

    auto* run = app.add_subcommand("run", "Run the benchmark matrix");
    std::string config_path, run_out;
    bool resume = false, print_config = false;
    int jobs = 0;
    run->add_option("--config", config_path, "Config JSON (defaults used when omitted)");
    run->add_option("--out", run_out, "Output directory");
    run->add_flag("--resume", resume, "Reuse finished cells from the output directory");
    run->add_option("--jobs", jobs, "Worker threads");
    run->add_flag("--print-config", print_config, "Print the effective config and exit");

    auto* rep = app.add_subcommand("report", "Re-emit reports from a run directory");
    std::string in_dir, formats = "csv";
    rep->add_option("--in", in_dir, "Run directory containing cells/")->required();
    rep->add_option("--format", formats, "Comma-separated subset of csv,md,json")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(snr_list, fr_list, seed, samples, buses, gen_out);
        if (run->parsed()) return cmd_run(config_path, run_out, resume, jobs, print_config);
        if (rep->parsed()) return cmd_report(in_dir, formats);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
