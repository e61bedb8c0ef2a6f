#pragma once

// Run configuration: JSON in, validated RunConfig out.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hsx/measure.hpp"
#include "hsx/metric.hpp"

namespace hsx {

enum class Experiment { Simulate, Metric, Lipschitz, Converge, Validate };

std::string to_string(Experiment e);
/// nullopt for an unknown name.
std::optional<Experiment> parse_experiment(const std::string& name);

/// A named built-in scenario or an inline state.
struct StateSource {
  std::string scenario;
  std::optional<EulerianState> inline_state;
};

struct RunConfig {
  Experiment experiment = Experiment::Simulate;
  StateSource source{"breaking", std::nullopt};
  std::optional<StateSource> target;  // second state for `metric`
  std::size_t grid_n = 1024;
  std::optional<double> xi_min;
  std::optional<double> xi_max;
  std::vector<double> times{0.0};
  DistanceBudget budget{};
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "hsx-out";
  std::size_t pairs = 20;
  double roughness = 0.5;
  std::vector<double> lipschitz_times{0.5, 1.0, 2.0};
  std::vector<std::size_t> ladder{256, 512, 1024};
  nlohmann::json raw;
};

/// Throws ParseError / ValidationError with the offending field.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Re-checks invariants after command-line overrides.
void validate_config(const RunConfig& c);

nlohmann::json to_json(const RunConfig& c);

}  // namespace hsx
