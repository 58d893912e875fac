#include "gridbench/gridsim.hpp"
#include "gridbench/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace gridbench {

namespace {

constexpr double kGolden = 0.61803398874989484;

// Per-bus nominal phase-angle offset (radians); constant across scenarios.
double nominal_angle(int bus) {
    double f = (bus + 1) * kGolden;
    return 0.2 * (2.0 * (f - std::floor(f)) - 1.0);
}

constexpr double kPlastic = 0.75487766624669276;

// Oscillation phase for a (bus, channel) pair within one scenario.
// Irrational multiples of pi keep the sampled cosine away from exact zeros,
// so fault deviations are nonzero at every sample. The scenario key
// decorrelates the temporal signatures of different classes; without it,
// every class would ride the same waveform and only differ by amplitude.
double osc_phase(int bus, int channel, int scenario_key, std::uint64_t seed) {
    double f = (bus + 1) * kGolden + 0.31 * channel + kPlastic * (scenario_key + 1) +
               0.0137 * static_cast<double>(seed % 977);
    f -= std::floor(f);
    return 2.0 * M_PI * f + 0.123;
}

// Scenario-specific oscillation frequency: up to +50% above the profile
// base, spread quasi-uniformly over the scenario roster.
double osc_freq(double base_hz, int scenario_key) {
    double f = (scenario_key + 1) * kPlastic * kGolden;
    return base_hz * (1.0 + 0.5 * (f - std::floor(f)));
}

// Relative weight of each measurement channel per fault type:
// {voltage, frequency, angle}. Sign encodes dip vs swell.
void channel_weights(FaultType t, double w[3]) {
    switch (t) {
    case FaultType::GeneratorGround: w[0] = -1.0; w[1] = 0.25; w[2] = 0.85; break;
    case FaultType::GeneratorOutage: w[0] = 0.2;  w[1] = 1.0;  w[2] = 0.3;  break;
    case FaultType::LoadLoss:        w[0] = 0.45; w[1] = 0.3;  w[2] = 0.2;  break;
    case FaultType::Normal:          w[0] = 0.0;  w[1] = 0.0;  w[2] = 0.0;  break;
    }
}

} // namespace

std::string fault_type_name(FaultType t) {
    switch (t) {
    case FaultType::LoadLoss: return "LL";
    case FaultType::GeneratorOutage: return "GO";
    case FaultType::GeneratorGround: return "GG";
    case FaultType::Normal: return "Normal";
    }
    return "?";
}

GridModel build_topology(int n_buses, std::uint64_t seed) {
    if (n_buses < 3) throw std::invalid_argument("build_topology: n_buses must be >= 3");

    GridModel g;
    g.n_buses = n_buses;
    g.adjacency.resize(n_buses);

    std::set<std::pair<int, int>> edge_set;
    auto add_edge = [&](int a, int b) {
        if (a == b) return;
        if (a > b) std::swap(a, b);
        if (edge_set.insert({a, b}).second) {
            g.edges.push_back({a, b});
            g.adjacency[a].push_back(b);
            g.adjacency[b].push_back(a);
        }
    };

    for (int i = 0; i < n_buses; ++i) add_edge(i, (i + 1) % n_buses);

    // Random chords bring the expected degree to about 3.
    Rng rng(mix_seed(seed, 0));
    std::uniform_int_distribution<int> pick(0, n_buses - 1);
    int n_chords = n_buses / 2;
    for (int c = 0; c < n_chords; ++c) add_edge(pick(rng), pick(rng));

    // Role counts scale with the 19/91/31-of-118 defaults.
    auto scaled = [&](int count118) {
        return static_cast<int>(std::ceil(static_cast<double>(n_buses) * count118 / 118.0));
    };
    int n_gen = std::min(scaled(19), n_buses - 1);
    int n_load = std::min(scaled(91), n_buses - n_gen);
    int n_ll = std::min(scaled(31), n_load);

    std::vector<int> ids(n_buses);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    g.generator_buses.assign(ids.begin(), ids.begin() + n_gen);
    g.load_buses.assign(ids.begin() + n_gen, ids.begin() + n_gen + n_load);
    std::sort(g.generator_buses.begin(), g.generator_buses.end());
    std::sort(g.load_buses.begin(), g.load_buses.end());

    // LL fault sites: evenly spaced over the sorted load list, which spreads
    // them around the ring.
    for (int i = 0; i < n_ll; ++i) {
        g.ll_fault_buses.push_back(g.load_buses[static_cast<std::size_t>(i) * n_load / n_ll]);
    }
    return g;
}

std::vector<int> bfs_distances(const GridModel& grid, int src) {
    std::vector<int> dist(grid.n_buses, -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : grid.adjacency[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    return dist;
}

std::vector<ScenarioSpec> scenario_roster(const GridModel& grid, double fr_ohm) {
    std::vector<ScenarioSpec> roster;
    for (int b : grid.ll_fault_buses) roster.push_back({FaultType::LoadLoss, b, fr_ohm});
    for (int b : grid.generator_buses) roster.push_back({FaultType::GeneratorOutage, b, fr_ohm});
    for (int b : grid.generator_buses) roster.push_back({FaultType::GeneratorGround, b, fr_ohm});
    roster.push_back({FaultType::Normal, -1, fr_ohm});
    return roster;
}

Matrix simulate_scenario(const GridModel& grid, const ScenarioSpec& s,
                         const SeverityProfile& profile, std::uint64_t seed,
                         int n_samples) {
    int nb = grid.n_buses;
    Matrix block(n_samples, 3 * nb);

    // Nominal operating point.
    for (int b = 0; b < nb; ++b) {
        block.col(b).setConstant(1.0);
        block.col(nb + b).setConstant(50.0);
        block.col(2 * nb + b).setConstant(nominal_angle(b));
    }
    if (s.fault_type == FaultType::Normal) return block;

    const auto& legal = (s.fault_type == FaultType::LoadLoss) ? grid.ll_fault_buses
                                                              : grid.generator_buses;
    if (std::find(legal.begin(), legal.end(), s.location_bus) == legal.end()) {
        throw std::invalid_argument("simulate_scenario: location not legal for fault type");
    }

    double base = s.fault_type == FaultType::GeneratorGround ? profile.base_gg
                : s.fault_type == FaultType::GeneratorOutage ? profile.base_go
                                                             : profile.base_ll;
    double w[3];
    channel_weights(s.fault_type, w);

    std::vector<int> dist = bfs_distances(grid, s.location_bus);
    double fr_factor = 1.0 / (1.0 + profile.fr_attenuation * s.fr_ohm);
    double duration_s = s.duration_ms / 1000.0;
    int key = 3 * s.location_bus + static_cast<int>(s.fault_type);
    double freq = osc_freq(profile.osc_freq_hz, key);
    // Scenario-specific sustained fraction, log-uniform over the configured
    // range (0.41421... = sqrt(2)-1 keeps the spread quasi-uniform in key).
    double su = (key + 1) * 0.41421356237309515;
    su -= std::floor(su);
    double sustain = profile.sustain * std::pow(10.0, -profile.sustain_decades * su);

    for (int b = 0; b < nb; ++b) {
        double sev = base / (1.0 + profile.distance_decay * dist[b]) * fr_factor;
        for (int ch = 0; ch < 3; ++ch) {
            if (w[ch] == 0.0) continue;
            double amp = sev * w[ch];
            double phase = osc_phase(b, ch, key, seed);
            for (int t = 0; t < n_samples; ++t) {
                double time = t * duration_s / n_samples;
                block(t, ch * nb + b) +=
                    amp * (sustain + (1.0 - sustain) * std::exp(-time / profile.tau_s) *
                                         std::cos(2.0 * M_PI * freq * time + phase));
            }
        }
    }
    return block;
}

Matrix inject_noise(const Matrix& block, double snr_db, std::uint64_t seed) {
    if (std::isinf(snr_db) && snr_db > 0) return block;
    if (!std::isfinite(snr_db)) throw std::invalid_argument("inject_noise: snr_db must be finite or +inf");

    Matrix out = block;
    Rng rng(mix_seed(seed, 1));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double n = static_cast<double>(block.rows());
    for (int j = 0; j < block.cols(); ++j) {
        double mean = block.col(j).mean();
        double p_sig = (block.col(j).array() - mean).square().sum() / n;
        p_sig = std::max(p_sig, 1e-12);
        double sigma = std::sqrt(p_sig * std::pow(10.0, -snr_db / 10.0));
        for (int i = 0; i < block.rows(); ++i) out(i, j) += sigma * gauss(rng);
    }
    return out;
}

std::vector<std::string> feature_names(int n_buses) {
    std::vector<std::string> names;
    names.reserve(3 * n_buses);
    const char* prefix[3] = {"v", "f", "a"};
    for (int ch = 0; ch < 3; ++ch) {
        for (int b = 1; b <= n_buses; ++b) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%s%03d", prefix[ch], b);
            names.emplace_back(buf);
        }
    }
    return names;
}

Dataset build_dataset(const GridModel& grid, double snr_db, double fr_ohm,
                      const SeverityProfile& profile, std::uint64_t seed,
                      int samples_per_class) {
    auto roster = scenario_roster(grid, fr_ohm);
    int l = static_cast<int>(roster.size());
    int p = 3 * grid.n_buses;

    Dataset ds;
    ds.X.resize(static_cast<Eigen::Index>(l) * samples_per_class, p);
    ds.y.resize(static_cast<std::size_t>(l) * samples_per_class);
    ds.feature_names = feature_names(grid.n_buses);
    ds.meta = {snr_db, fr_ohm, seed};
    ds.n_classes = l;

    for (int c = 0; c < l; ++c) {
        Matrix block = simulate_scenario(grid, roster[c], profile, seed, samples_per_class);
        block = inject_noise(block, snr_db, mix_seed(seed, static_cast<std::uint64_t>(c) + 100));
        ds.X.middleRows(static_cast<Eigen::Index>(c) * samples_per_class, samples_per_class) = block;
        std::fill_n(ds.y.begin() + static_cast<std::size_t>(c) * samples_per_class,
                    samples_per_class, c);
    }
    return ds;
}

} // namespace gridbench
