#pragma once

// Experiment drivers behind the command line tool. Every driver writes its
// artifacts into config.out_dir and finishes with manifest.json.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsx/banach.hpp"
#include "hsx/config.hpp"
#include "hsx/measure.hpp"

namespace hsx {

struct RunResult {
  int exit_code = 0;
  std::vector<std::string> artifacts;  // file names relative to out_dir
  nlohmann::json summary;
};

/// Dispatches on config.experiment. Module errors propagate as hsx::Error.
RunResult run(const RunConfig& config);

/// Label grid used for a source: the scenario's dyadic grid, an explicit
/// range from the config, or a range derived from the state's support.
Grid grid_for(const RunConfig& config, const StateSource& source);

EulerianState resolve(const StateSource& source);

/// Version string recorded in manifests.
std::string version();

}  // namespace hsx
