#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace gridbench {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class FaultType { LoadLoss, GeneratorOutage, GeneratorGround, Normal };

std::string fault_type_name(FaultType t);

// Surrogate bus graph: ring plus seeded random chords. Role lists follow the
// 118-bus defaults (19 generators, 91 loads, 31 load-loss fault sites) and
// scale proportionally for other sizes.
struct GridModel {
    int n_buses = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adjacency;
    std::vector<int> generator_buses;
    std::vector<int> load_buses;
    std::vector<int> ll_fault_buses;
};

struct ScenarioSpec {
    FaultType fault_type = FaultType::Normal;
    int location_bus = -1; // unused for Normal
    double fr_ohm = 1.0;
    double duration_ms = 25.0;
    double sample_rate_hz = 10000.0;
};

// Shapes the synthetic fault signatures. Deviations are a sustained step
// plus an exponentially decaying sinusoid, attenuated by graph distance and
// fault resistance:
//   severity(s, b) = base(type) / (1 + distance_decay * dist(b, loc))
//                               / (1 + fr_attenuation * fr_ohm)
//   deviation(t)   = severity * w_ch * (s_c
//                    + (1 - s_c) * exp(-t/tau) * cos(2*pi*f*t + phase))
// The sustained term s_c keeps each scenario's post-transient operating point
// distinct; without it every class would relax onto the same nominal point.
// s_c is spread log-uniformly per scenario over `sustain_decades` decades
// below `sustain`, so scenario fingerprints span a wide dynamic range and
// classification accuracy degrades gradually as measurement noise rises.
struct SeverityProfile {
    double base_ll = 0.12;
    double base_go = 0.55;
    double base_gg = 1.0;
    double distance_decay = 0.9;
    double fr_attenuation = 0.12;
    double osc_freq_hz = 200.0;
    double tau_s = 0.003;
    double sustain = 0.3;
    double sustain_decades = 3.0;
};

struct DatasetMeta {
    double snr_db = 0.0;
    double fr_ohm = 0.0;
    std::uint64_t seed = 0;
};

struct Dataset {
    Matrix X;                               // n x p, p = 3 * n_buses
    std::vector<int> y;                     // class ids 0..l-1
    std::vector<std::string> feature_names; // v001.., f001.., a001..
    DatasetMeta meta;
    int n_classes = 0;
};

GridModel build_topology(int n_buses, std::uint64_t seed);

// Hop counts from src to every bus.
std::vector<int> bfs_distances(const GridModel& grid, int src);

// Canonical class order: LL sites ascending, then GO, GG (generator buses
// ascending), Normal last. Index in the returned list is the class id.
std::vector<ScenarioSpec> scenario_roster(const GridModel& grid, double fr_ohm);

// Clean measurement block, n_samples x 3*n_buses. Column layout: voltage
// per bus, then frequency, then phase angle. The seed only shifts the
// oscillation phases; it does not introduce randomness within the block.
Matrix simulate_scenario(const GridModel& grid, const ScenarioSpec& s,
                         const SeverityProfile& profile, std::uint64_t seed,
                         int n_samples = 250);

// Per-column additive Gaussian noise calibrated to snr_db against the
// column's deviation-from-mean power (floored at 1e-12). +infinity returns
// the input unchanged.
Matrix inject_noise(const Matrix& block, double snr_db, std::uint64_t seed);

Dataset build_dataset(const GridModel& grid, double snr_db, double fr_ohm,
                      const SeverityProfile& profile, std::uint64_t seed,
                      int samples_per_class = 250);

std::vector<std::string> feature_names(int n_buses);

} // namespace gridbench
