#include "gridbench/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gridbench {

void write_dataset_csv(const std::string& path, const Dataset& ds,
                       const std::vector<ScenarioSpec>& roster) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_dataset_csv: cannot open " + path);

    for (std::size_t j = 0; j < ds.feature_names.size(); ++j) {
        out << ds.feature_names[j] << ',';
    }
    out << "label\n";

    char buf[32];
    for (Eigen::Index i = 0; i < ds.X.rows(); ++i) {
        std::string line;
        line.reserve(ds.X.cols() * 20);
        for (Eigen::Index j = 0; j < ds.X.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g,", ds.X(i, j));
            line += buf;
        }
        line += std::to_string(ds.y[i]);
        line += '\n';
        out << line;
    }

    nlohmann::json jroster = nlohmann::json::array();
    for (const ScenarioSpec& s : roster) {
        jroster.push_back({{"fault_type", fault_type_name(s.fault_type)},
                           {"location_bus", s.location_bus},
                           {"fr_ohm", s.fr_ohm}});
    }
    nlohmann::json meta{{"snr_db", std::isinf(ds.meta.snr_db) ? 1e308 : ds.meta.snr_db},
                        {"fr_ohm", ds.meta.fr_ohm},
                        {"seed", ds.meta.seed},
                        {"roster", std::move(jroster)}};
    std::ofstream side(path + ".meta.json");
    if (!side) throw std::runtime_error("write_dataset_csv: cannot open " + path + ".meta.json");
    side << meta.dump(2) << '\n';
}

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_dataset_csv: cannot open " + path);

    Dataset ds;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_dataset_csv: empty file " + path);
    {
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) ds.feature_names.push_back(field);
        if (ds.feature_names.empty() || ds.feature_names.back() != "label") {
            throw std::runtime_error("read_dataset_csv: missing label column in " + path);
        }
        ds.feature_names.pop_back();
    }
    const std::size_t p = ds.feature_names.size();

    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::size_t col = 0;
        while (std::getline(ss, field, ',')) {
            if (col < p) {
                values.push_back(std::stod(field));
            } else {
                ds.y.push_back(std::stoi(field));
            }
            ++col;
        }
        if (col != p + 1) throw std::runtime_error("read_dataset_csv: ragged row in " + path);
    }

    const std::size_t n = ds.y.size();
    ds.X.resize(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) ds.X(i, j) = values[i * p + j];
    }
    ds.n_classes = ds.y.empty() ? 0 : *std::max_element(ds.y.begin(), ds.y.end()) + 1;

    std::ifstream side(path + ".meta.json");
    if (side) {
        nlohmann::json meta = nlohmann::json::parse(side);
        ds.meta.snr_db = meta.value("snr_db", 0.0);
        ds.meta.fr_ohm = meta.value("fr_ohm", 0.0);
        ds.meta.seed = meta.value("seed", std::uint64_t{0});
    }
    return ds;
}

} // namespace gridbench
