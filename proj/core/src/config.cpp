#include "hsx/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "hsx/errors.hpp"
#include "hsx/io.hpp"
#include "hsx/scenarios.hpp"

namespace hsx {

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::Simulate: return "simulate";
    case Experiment::Metric: return "metric";
    case Experiment::Lipschitz: return "lipschitz";
    case Experiment::Converge: return "converge";
    case Experiment::Validate: return "validate";
  }
  return "unknown";
}

std::optional<Experiment> parse_experiment(const std::string& name) {
  for (Experiment e : {Experiment::Simulate, Experiment::Metric, Experiment::Lipschitz, Experiment::Converge,
                       Experiment::Validate}) {
    if (to_string(e) == name) return e;
  }
  return std::nullopt;
}

namespace {

const std::vector<std::string> kKnownKeys{"experiment", "scenario", "state",     "target",  "grid",
                                          "times",      "metric",   "seed",      "out",     "lipschitz",
                                          "converge"};

double get_number(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) throw Error(ErrorKind::ParseError, "expected a number", field);
  return j.get<double>();
}

std::size_t get_count(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw Error(ErrorKind::ValidationError, "expected a nonnegative integer", field);
  }
  return j.get<std::size_t>();
}

std::vector<double> get_times(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ValidationError, "expected a nonempty array", field);
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

StateSource get_source(const nlohmann::json& j, const std::string& field) {
  if (j.is_string()) return StateSource{j.get<std::string>(), std::nullopt};
  if (j.is_object()) return StateSource{"", eulerian_from_json(j)};
  throw Error(ErrorKind::ParseError, "expected a scenario name or a state object", field);
}

void check_source(const StateSource& s, const std::string& field) {
  if (!s.inline_state && !find_scenario(s.scenario)) {
    throw Error(ErrorKind::ValidationError, "unknown scenario '" + s.scenario + "'", field);
  }
}

void check_times(const std::vector<double>& times, const std::string& field) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) {
      throw Error(ErrorKind::ValidationError, "times must be finite and nonnegative", field);
    }
    if (i > 0 && !(times[i] > times[i - 1])) throw Error(ErrorKind::ValidationError, "times must increase", field);
  }
}

}  // namespace

void validate_config(const RunConfig& c) {
  check_source(c.source, c.source.inline_state ? "state" : "scenario");
  if (c.target) check_source(*c.target, "target");
  if (c.grid_n < 3) throw Error(ErrorKind::ValidationError, "grid needs at least 3 nodes", "grid.n");
  if (c.xi_min.has_value() != c.xi_max.has_value()) {
    throw Error(ErrorKind::ValidationError, "give both xi_min and xi_max or neither", "grid");
  }
  if (c.xi_min && !(*c.xi_min < -1.0 && *c.xi_max > 1.0)) {
    throw Error(ErrorKind::ValidationError, "grid must contain [-1, 1] in its interior", "grid");
  }
  check_times(c.times, "times");
  check_times(c.lipschitz_times, "lipschitz.times");
  if (c.budget.quadrature < 1) throw Error(ErrorKind::ValidationError, "need at least one quadrature point", "metric.quadrature");
  if (!(c.roughness > 0.0 && c.roughness < 1.0)) {
    throw Error(ErrorKind::ValidationError, "roughness must lie in (0, 1)", "lipschitz.roughness");
  }
  if (c.ladder.size() < 2) throw Error(ErrorKind::ValidationError, "ladder needs at least two grids", "converge.ladder");
  for (std::size_t i = 0; i < c.ladder.size(); ++i) {
    if (c.ladder[i] < 3 || (i > 0 && c.ladder[i] <= c.ladder[i - 1])) {
      throw Error(ErrorKind::ValidationError, "ladder must increase from at least 3", "converge.ladder");
    }
  }
}

RunConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "configuration must be a JSON object", "");
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      throw Error(ErrorKind::ValidationError, "unknown key", key);
    }
  }
  RunConfig c;
  c.raw = j;
  if (j.contains("experiment")) {
    if (!j["experiment"].is_string()) throw Error(ErrorKind::ParseError, "expected a string", "experiment");
    const auto e = parse_experiment(j["experiment"].get<std::string>());
    if (!e) throw Error(ErrorKind::ValidationError, "unknown experiment", "experiment");
    c.experiment = *e;
  }
  if (j.contains("scenario") && j.contains("state")) {
    throw Error(ErrorKind::ValidationError, "give either scenario or state", "state");
  }
  if (j.contains("scenario")) {
    if (!j["scenario"].is_string()) throw Error(ErrorKind::ParseError, "expected a string", "scenario");
    c.source = StateSource{j["scenario"].get<std::string>(), std::nullopt};
  }
  if (j.contains("state")) c.source = get_source(j["state"], "state");
  if (j.contains("target")) c.target = get_source(j["target"], "target");
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    if (!g.is_object()) throw Error(ErrorKind::ParseError, "expected an object", "grid");
    if (g.contains("n")) c.grid_n = get_count(g["n"], "grid.n");
    if (g.contains("xi_min")) c.xi_min = get_number(g["xi_min"], "grid.xi_min");
    if (g.contains("xi_max")) c.xi_max = get_number(g["xi_max"], "grid.xi_max");
  }
  if (j.contains("times")) c.times = get_times(j["times"], "times");
  if (j.contains("metric")) {
    const auto& m = j["metric"];
    if (!m.is_object()) throw Error(ErrorKind::ParseError, "expected an object", "metric");
    if (m.contains("controls")) c.budget.controls = get_count(m["controls"], "metric.controls");
    if (m.contains("quadrature")) c.budget.quadrature = get_count(m["quadrature"], "metric.quadrature");
    if (m.contains("sweeps")) c.budget.sweeps = get_count(m["sweeps"], "metric.sweeps");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0)) {
      throw Error(ErrorKind::ValidationError, "expected an unsigned integer", "seed");
    }
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw Error(ErrorKind::ParseError, "expected a string", "out");
    c.out_dir = j["out"].get<std::string>();
  }
  if (j.contains("lipschitz")) {
    const auto& l = j["lipschitz"];
    if (!l.is_object()) throw Error(ErrorKind::ParseError, "expected an object", "lipschitz");
    if (l.contains("pairs")) c.pairs = get_count(l["pairs"], "lipschitz.pairs");
    if (l.contains("roughness")) c.roughness = get_number(l["roughness"], "lipschitz.roughness");
    if (l.contains("times")) c.lipschitz_times = get_times(l["times"], "lipschitz.times");
  }
  if (j.contains("converge")) {
    const auto& v = j["converge"];
    if (!v.is_object()) throw Error(ErrorKind::ParseError, "expected an object", "converge");
    if (v.contains("ladder")) {
      if (!v["ladder"].is_array()) throw Error(ErrorKind::ParseError, "expected an array", "converge.ladder");
      c.ladder.clear();
      for (std::size_t i = 0; i < v["ladder"].size(); ++i) {
        c.ladder.push_back(get_count(v["ladder"][i], "converge.ladder[" + std::to_string(i) + "]"));
      }
    }
  }
  validate_config(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::IoError, "cannot open config " + path.string(), "config");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what(), "config");
  }
  return parse_config(j);
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["experiment"] = to_string(c.experiment);
  j["state"] = c.source.inline_state ? to_json(*c.source.inline_state) : nlohmann::json(c.source.scenario);
  if (c.target) j["target"] = c.target->inline_state ? to_json(*c.target->inline_state) : nlohmann::json(c.target->scenario);
  j["grid"] = {{"n", c.grid_n}};
  if (c.xi_min) {
    j["grid"]["xi_min"] = *c.xi_min;
    j["grid"]["xi_max"] = *c.xi_max;
  }
  j["times"] = c.times;
  j["metric"] = {{"controls", c.budget.controls}, {"quadrature", c.budget.quadrature}, {"sweeps", c.budget.sweeps}};
  j["seed"] = c.seed;
  j["out"] = c.out_dir.string();
  j["lipschitz"] = {{"pairs", c.pairs}, {"roughness", c.roughness}, {"times", c.lipschitz_times}};
  j["converge"] = {{"ladder", c.ladder}};
  return j;
}

}  // namespace hsx
