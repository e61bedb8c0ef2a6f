// hsx: run Hunter-Saxton experiments from a JSON configuration.
//
//   hsx simulate --config run.json [--out DIR] [--seed N] [--grid-n N] [--times 0,1,2]

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hsx/config.hpp"
#include "hsx/errors.hpp"
#include "hsx/run.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid_n;
  std::vector<double> times;
};

void report(const std::string& kind, const std::string& message, const std::string& field) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}, {"field", field}}.dump() << '\n';
}

int execute(hsx::Experiment experiment, const Overrides& o) {
  hsx::RunConfig c = hsx::load_config(o.config);
  if (c.raw.contains("experiment") && c.experiment != experiment) {
    throw hsx::Error(hsx::ErrorKind::ValidationError,
                     "config asks for '" + hsx::to_string(c.experiment) + "' but the subcommand is '" +
                         hsx::to_string(experiment) + "'",
                     "experiment");
  }
  c.experiment = experiment;
  if (!o.out.empty()) c.out_dir = o.out;
  if (o.seed) c.seed = *o.seed;
  if (o.grid_n) c.grid_n = *o.grid_n;
  if (!o.times.empty()) c.times = o.times;
  hsx::validate_config(c);

  const hsx::RunResult r = hsx::run(c);
  std::cout << nlohmann::json{{"experiment", hsx::to_string(experiment)},
                              {"out", c.out_dir.string()},
                              {"artifacts", r.artifacts},
                              {"summary", r.summary}}
                   .dump(2)
            << '\n';
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hunter-Saxton conservative solutions: simulation, metric and Lipschitz experiments"};
  app.set_version_flag("--version", hsx::version());
  app.require_subcommand(1);

  Overrides o;
  std::optional<hsx::Experiment> chosen;
  for (hsx::Experiment e : {hsx::Experiment::Simulate, hsx::Experiment::Metric, hsx::Experiment::Lipschitz,
                            hsx::Experiment::Converge, hsx::Experiment::Validate}) {
    CLI::App* sub = app.add_subcommand(hsx::to_string(e));
    sub->add_option("--config", o.config, "JSON configuration file")->required();
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--grid-n", o.grid_n, "number of label grid nodes");
    sub->add_option("--times", o.times, "comma separated times")->delimiter(',');
    sub->callback([&chosen, e] { chosen = e; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report("UsageError", e.what(), "");
    return 2;
  }

  try {
    return execute(*chosen, o);
  } catch (const hsx::Error& e) {
    report(std::string(hsx::to_string(e.kind())), e.what(), std::string(e.field()));
  } catch (const std::exception& e) {
    report("InternalError", e.what(), "");
  }
  return 1;
}
