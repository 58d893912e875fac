#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gridbench/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

using namespace gridbench;
namespace fs = std::filesystem;

TEST_CASE("dataset csv round trip is value-exact") {
    GridModel grid = build_topology(10, 21);
    Dataset ds = build_dataset(grid, 30.0, 1.0, SeverityProfile{}, 21, 4);
    auto roster = scenario_roster(grid, 1.0);

    fs::path path = fs::temp_directory_path() / "gb_io_test.csv";
    write_dataset_csv(path.string(), ds, roster);
    Dataset back = read_dataset_csv(path.string());

    CHECK(back.X.rows() == ds.X.rows());
    CHECK(back.X.cols() == ds.X.cols());
    CHECK(back.X == ds.X); // %.17g printing round-trips doubles exactly
    CHECK(back.y == ds.y);
    CHECK(back.feature_names == ds.feature_names);
    CHECK(back.n_classes == ds.n_classes);
    CHECK(back.meta.snr_db == 30.0);
    CHECK(back.meta.fr_ohm == 1.0);
    CHECK(back.meta.seed == 21);

    // Sidecar carries the roster.
    nlohmann::json meta = nlohmann::json::parse(std::ifstream(path.string() + ".meta.json"));
    CHECK(meta.at("roster").size() == roster.size());
    CHECK(meta.at("roster").back().at("fault_type") == "Normal");

    fs::remove(path);
    fs::remove(path.string() + ".meta.json");
}

TEST_CASE("reader rejects malformed files") {
    fs::path path = fs::temp_directory_path() / "gb_io_bad.csv";
    {
        std::ofstream out(path);
        out << "v001,label\n1.0,0\n2.0\n"; // ragged second row
    }
    CHECK_THROWS_AS(read_dataset_csv(path.string()), std::runtime_error);
    {
        std::ofstream out(path);
        out << "v001,v002\n"; // no label column
    }
    CHECK_THROWS_AS(read_dataset_csv(path.string()), std::runtime_error);
    CHECK_THROWS_AS(read_dataset_csv("/nonexistent/nope.csv"), std::runtime_error);
    fs::remove(path);
}
