#include "hsx/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "hsx/errors.hpp"
#include "hsx/evolution.hpp"
#include "hsx/io.hpp"
#include "hsx/metric.hpp"
#include "hsx/random.hpp"
#include "hsx/scenarios.hpp"
#include "hsx/state.hpp"

#ifndef HSX_VERSION
#define HSX_VERSION "0.0.0"
#endif

namespace hsx {

std::string version() { return HSX_VERSION; }

EulerianState resolve(const StateSource& source) {
  if (source.inline_state) return *source.inline_state;
  const Scenario* s = find_scenario(source.scenario);
  if (!s) throw Error(ErrorKind::ValidationError, "unknown scenario '" + source.scenario + "'", "scenario");
  return s->initial;
}

namespace {

std::pair<double, double> span_for(const StateSource& source) {
  if (!source.inline_state) {
    const Scenario* s = find_scenario(source.scenario);
    if (!s) throw Error(ErrorKind::ValidationError, "unknown scenario '" + source.scenario + "'", "scenario");
    return {s->span_lo, s->span_hi};
  }
  const EulerianState& st = *source.inline_state;
  double lo = -2.0;
  double hi = 2.0;
  if (const auto hull = st.active_hull()) {
    lo = std::min(lo, std::floor(hull->first) - 1.0);
    hi = std::max(hi, std::ceil(hull->second + st.mu.total_mass()) + 1.0);
  }
  return {lo, hi};
}

Grid grid_on(const RunConfig& c, std::pair<double, double> span) {
  if (c.xi_min) return Grid(*c.xi_min, *c.xi_max, c.grid_n);
  return Grid::covering(span.first, span.second, c.grid_n);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

nlohmann::json tolerances() {
  return {{"tol_mono", kTolMono},
          {"tol_rel", kTolRel},
          {"tol_identity", kTolIdentity},
          {"tol_tail", kTailTolerance},
          {"plateau_factor", kPlateauFactor}};
}

nlohmann::json report_json(const ClassReport& r) {
  return {{"in_F", r.in_F},
          {"in_G", r.in_G},
          {"in_F0", r.in_F0},
          {"in_G0", r.in_G0},
          {"alpha_estimate", r.alpha_estimate},
          {"c_estimate", r.c_estimate},
          {"identity_defect", r.identity_defect},
          {"f_defect", r.f_defect}};
}

std::string stem(const char* prefix, std::size_t k) {
  std::ostringstream s;
  s << prefix << '_' << k;
  return s.str();
}

// M with the strict class check, falling back to G for states whose kinks
// fall between nodes.
EulerianState reconstruct(const LagrangianState& x) {
  try {
    return to_eulerian(x, Membership::StrictF);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInF) throw;
    return to_eulerian(x, Membership::RelaxedG);
  }
}

RunResult simulate(const RunConfig& c, const std::filesystem::path& out) {
  RunResult r;
  const EulerianState s0 = resolve(c.source);
  const Grid grid = grid_for(c, c.source);
  const LagrangianState x0 = to_lagrangian(s0, grid);
  nlohmann::json snapshots = nlohmann::json::array();
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    const LagrangianState x = evolve(x0, c.times[k]);
    const std::string ls = stem("lagrangian", k);
    const std::string es = stem("eulerian", k);
    write_lagrangian(out, ls, x);
    write_eulerian(out, es, reconstruct(x));
    r.artifacts.insert(r.artifacts.end(), {ls + ".csv", ls + ".tails.json", es + ".csv", es + ".measure.json"});
    snapshots.push_back({{"t", c.times[k]}, {"lagrangian", ls + ".csv"}, {"eulerian", es + ".csv"}});
  }
  write_json(out / "trajectory.json",
             {{"times", c.times}, {"h_infinity", x0.tails.h_inf}, {"grid", to_json(grid)}, {"snapshots", snapshots}});
  r.artifacts.push_back("trajectory.json");
  r.summary = {{"grid", to_json(grid)}, {"h_infinity", x0.tails.h_inf}, {"breaking_time", breaking_time(s0)}};
  if (!std::isfinite(breaking_time(s0))) r.summary["breaking_time"] = nullptr;
  return r;
}

RunResult metric(const RunConfig& c, const std::filesystem::path& out) {
  if (!c.target) throw Error(ErrorKind::ValidationError, "metric needs a target state", "target");
  RunResult r;
  const auto a = span_for(c.source);
  const auto b = span_for(*c.target);
  const Grid grid = grid_on(c, {std::min(a.first, b.first), std::max(a.second, b.second)});
  const LagrangianState x0 = to_lagrangian(resolve(c.source), grid);
  const LagrangianState x1 = to_lagrangian(resolve(*c.target), grid);
  const auto start = std::chrono::steady_clock::now();
  nlohmann::json entries = nlohmann::json::array();
  nlohmann::json timings = nlohmann::json::array();
  double first = 0.0;
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    const double t = c.times[k];
    const auto tick = std::chrono::steady_clock::now();
    const LagrangianState p = t == 0.0 ? x0 : project_pi(evolve(x0, t));
    const LagrangianState q = t == 0.0 ? x1 : project_pi(evolve(x1, t));
    const DistanceResult d = distance_upper(p, q, c.budget);
    if (k == 0) first = d.d_upper;
    entries.push_back({{"t", t},
                       {"d_upper", d.d_upper},
                       {"straight", d.straight},
                       {"stage_values", d.stage_values},
                       {"path_controls", d.path.controls.size()}});
    timings.push_back(seconds_since(tick));
  }
  write_json(out / "metric_report.json", {{"d_upper", first},
                                          {"path_controls", c.budget.controls + 2},
                                          {"quadrature", c.budget.quadrature},
                                          {"grid", to_json(grid)},
                                          {"entries", entries},
                                          {"timings", {{"per_time_seconds", timings}, {"total_seconds", seconds_since(start)}}}});
  r.artifacts.push_back("metric_report.json");
  r.summary = {{"d_upper", first}};
  return r;
}

RunResult lipschitz(const RunConfig& c, const std::filesystem::path& out) {
  RunResult r;
  const Grid grid = c.xi_min ? Grid(*c.xi_min, *c.xi_max, c.grid_n) : Grid(-6.0, 6.0, c.grid_n);
  std::vector<std::pair<LagrangianState, LagrangianState>> pairs;
  for (std::size_t p = 0; p < c.pairs; ++p) {
    pairs.emplace_back(random_g0_state(derive_seed(c.seed, 2 * p), grid, c.roughness),
                       random_g0_state(derive_seed(c.seed, 2 * p + 1), grid, c.roughness));
  }
  const LipschitzCertificate cert = lipschitz_certificate(pairs, c.lipschitz_times, c.budget);
  std::string csv = "pair_id,t,d0,dt,ratio,fitted_C\n";
  for (const LipschitzRow& row : cert.rows) {
    csv += std::to_string(row.pair_id) + ',' + format_double(row.t) + ',' + format_double(row.d0) + ',';
    csv += row.skipped ? std::string("skipped,skipped") : format_double(row.dt) + ',' + format_double(row.ratio);
    csv += ',' + format_double(cert.fitted_C) + '\n';
  }
  write_text(out / "lipschitz.csv", csv);
  r.artifacts.push_back("lipschitz.csv");
  r.summary = {{"fitted_C", cert.fitted_C}, {"grid", to_json(grid)}, {"pairs", c.pairs}};
  return r;
}

RunResult converge(const RunConfig& c, const std::filesystem::path& out) {
  if (c.source.inline_state) throw Error(ErrorKind::ValidationError, "converge needs a built-in scenario", "scenario");
  const Scenario& sc = *find_scenario(c.source.scenario);
  RunResult r;
  constexpr std::size_t kSamples = 4001;
  std::string csv = "n,h,t,error,order\n";
  std::vector<std::vector<double>> errors(c.times.size());
  std::vector<double> spacings;
  for (std::size_t n : c.ladder) {
    // Dyadic spacing, offset by a third of a cell.
    const double h = Grid::covering(sc.span_lo, sc.span_hi, n).spacing();
    const Grid grid = Grid::with_spacing(sc.span_lo - h / 3.0, h, n);
    spacings.push_back(h);
    const LagrangianState x0 = to_lagrangian(sc.initial, grid);
    for (std::size_t k = 0; k < c.times.size(); ++k) {
      const double t = c.times[k];
      const LagrangianState x = evolve(x0, t);
      const EulerianState s = to_eulerian(x, Membership::RelaxedG);
      const double lo = x.at(sc.span_lo).y;
      const double hi = x.at(sc.span_hi).y;
      double err = 0.0;
      for (std::size_t j = 0; j < kSamples; ++j) {
        const double xs = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(kSamples - 1);
        err = std::max(err, std::abs(s.u(xs) - sc.exact_u(t, xs)));
      }
      errors[k].push_back(err);
    }
  }
  bool monotone = true;
  double worst_order = std::numeric_limits<double>::infinity();
  for (std::size_t level = 0; level < c.ladder.size(); ++level) {
    for (std::size_t k = 0; k < c.times.size(); ++k) {
      const double e = errors[k][level];
      std::string order;
      if (level > 0) {
        const double prev = errors[k][level - 1];
        if (prev > 1e-13 || e > 1e-13) {
          if (!(e < prev)) monotone = false;
          const double o = std::log(prev / e) / std::log(spacings[level - 1] / spacings[level]);
          worst_order = std::min(worst_order, o);
          order = format_double(o);
        }
      }
      csv += std::to_string(c.ladder[level]) + ',' + format_double(spacings[level]) + ',' + format_double(c.times[k]) +
             ',' + format_double(e) + ',' + order + '\n';
    }
  }
  write_text(out / "converge.csv", csv);
  r.artifacts.push_back("converge.csv");
  r.summary = {{"monotone", monotone}, {"min_order", std::isfinite(worst_order) ? nlohmann::json(worst_order) : nlohmann::json()}};
  if (!monotone) {
    r.exit_code = 3;
    r.summary["error"] = "error did not decrease along the grid ladder";
  }
  return r;
}

RunResult validate_run(const RunConfig& c, const std::filesystem::path& out) {
  RunResult r;
  const EulerianState s0 = resolve(c.source);
  const Grid grid = grid_for(c, c.source);
  const LagrangianState x0 = to_lagrangian(s0, grid);
  const ClassReport report = validate(x0);
  const EulerianGap gap = eulerian_gap(reconstruct(x0), s0);
  const double bt = breaking_time(s0);
  const bool ok = report.in_F0 && gap.u <= 1e-10 && gap.cumulative <= 1e-10;
  nlohmann::json j = {{"grid", to_json(grid)},
                      {"class", report_json(report)},
                      {"round_trip", {{"u", gap.u}, {"cumulative", gap.cumulative}}},
                      {"h_infinity", x0.tails.h_inf},
                      {"breaking_time", std::isfinite(bt) ? nlohmann::json(bt) : nlohmann::json()},
                      {"compatibility_defect", compatibility_defect(s0)},
                      {"ok", ok}};
  write_json(out / "validate.json", j);
  r.artifacts.push_back("validate.json");
  r.summary = j;
  if (!ok) r.exit_code = 4;
  return r;
}

}  // namespace

Grid grid_for(const RunConfig& config, const StateSource& source) { return grid_on(config, span_for(source)); }

RunResult run(const RunConfig& config) {
  const std::filesystem::path out = config.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create " + out.string() + ": " + ec.message(), "out");

  const auto start = std::chrono::steady_clock::now();
  RunResult r;
  switch (config.experiment) {
    case Experiment::Simulate: r = simulate(config, out); break;
    case Experiment::Metric: r = metric(config, out); break;
    case Experiment::Lipschitz: r = lipschitz(config, out); break;
    case Experiment::Converge: r = converge(config, out); break;
    case Experiment::Validate: r = validate_run(config, out); break;
  }
  const nlohmann::json manifest = {{"version", version()},
                                   {"experiment", to_string(config.experiment)},
                                   {"config", to_json(config)},
                                   {"seed", config.seed},
                                   {"tolerances", tolerances()},
                                   {"artifacts", r.artifacts},
                                   {"summary", r.summary},
                                   {"exit_code", r.exit_code},
                                   {"elapsed_seconds", seconds_since(start)}};
  write_json(out / "manifest.json", manifest);
  r.artifacts.push_back("manifest.json");
  return r;
}

}  // namespace hsx
