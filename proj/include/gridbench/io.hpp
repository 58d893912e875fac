#pragma once

#include "gridbench/gridsim.hpp"

#include <string>

namespace gridbench {

// Dataset CSV: header v001..v118,f001..f118,a001..a118,label; one row per
// sample; values printed round-trip exact. The JSON sidecar (<path>.meta.json)
// records snr_db, fr_ohm, seed and the scenario roster.
void write_dataset_csv(const std::string& path, const Dataset& ds,
                       const std::vector<ScenarioSpec>& roster);
Dataset read_dataset_csv(const std::string& path);

} // namespace gridbench
