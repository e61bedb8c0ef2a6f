#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>

#include "hsx/config.hpp"
#include "hsx/errors.hpp"
#include "hsx/io.hpp"
#include "hsx/parallel.hpp"
#include "hsx/random.hpp"
#include "hsx/run.hpp"
#include "hsx/scenarios.hpp"

using namespace hsx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hsx-test-" + name);
  fs::remove_all(p);
  return p;
}

std::pair<ErrorKind, std::string> failure(const nlohmann::json& j) {
  try {
    parse_config(j);
  } catch (const Error& e) {
    return {e.kind(), e.field()};
  }
  ADD_FAILURE() << "config accepted: " << j.dump();
  return {ErrorKind::InvalidArgument, ""};
}

}  // namespace

TEST(Config, DefaultsAndRoundTrip) {
  const RunConfig c = parse_config(nlohmann::json::object());
  EXPECT_EQ(c.experiment, Experiment::Simulate);
  EXPECT_EQ(c.source.scenario, "breaking");
  const RunConfig again = parse_config(to_json(c));
  EXPECT_EQ(to_json(again), to_json(c));
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_EQ(failure({{"bogus", 1}}), std::make_pair(ErrorKind::ValidationError, std::string("bogus")));
  EXPECT_EQ(failure({{"scenario", "nope"}}).second, "scenario");
  EXPECT_EQ(failure({{"times", {1.0, 0.5}}}).second, "times");
  EXPECT_EQ(failure({{"grid", {{"n", "many"}}}}).second, "grid.n");
  EXPECT_EQ(failure({{"times", {0.0, "x"}}}), std::make_pair(ErrorKind::ParseError, std::string("times[1]")));
  EXPECT_EQ(failure({{"lipschitz", {{"roughness", 1.5}}}}).second, "lipschitz.roughness");
  EXPECT_EQ(failure({{"state", {{"u", {{"knots", {{0.0, 0.0}, {1.0, -1.0}}}}}}}}).second, "state");
}

TEST(Config, InlineState) {
  const nlohmann::json state = to_json(find_scenario("breaking")->initial);
  const RunConfig c = parse_config({{"state", state}, {"experiment", "validate"}});
  ASSERT_TRUE(c.source.inline_state);
  EXPECT_EQ(to_json(*c.source.inline_state), state);
  EXPECT_NO_THROW(grid_for(c, c.source));
}

TEST(Io, FormatDoubleRoundTrips) {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 12345.678}) EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(Io, LagrangianSnapshotRoundTrip) {
  const fs::path dir = scratch("snapshot");
  fs::create_directories(dir);
  const LagrangianState x = random_g0_state(4, Grid(-6.0, 6.0, 99), 0.5);
  write_lagrangian(dir, "snap", x);
  const LagrangianState back = read_lagrangian(dir, "snap");
  EXPECT_EQ(back.y, x.y);
  EXPECT_EQ(back.U, x.U);
  EXPECT_EQ(back.H, x.H);
  EXPECT_EQ(back.tails, x.tails);
  std::ifstream f(dir / "snap.csv");
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "xi,y,U,H");
}

TEST(Io, MissingFileIsIoError) {
  try {
    read_json("/nonexistent/hsx.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IoError);
  }
}

TEST(Random, DeterministicAndGridIndependent) {
  const Grid coarse(-6.0, 6.0, 121);
  const Grid fine(-6.0, 6.0, 241);
  const LagrangianState a = random_g0_state(99, coarse, 0.5);
  const LagrangianState b = random_g0_state(99, coarse, 0.5);
  const LagrangianState c = random_g0_state(99, fine, 0.5);
  EXPECT_EQ(a.y, b.y);
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_TRUE(validate(a).in_G0);
  for (std::size_t i = 0; i < coarse.size(); ++i) EXPECT_NEAR(a.y[i], c.y[2 * i], 1e-6);
  Rng r(5);
  for (int k = 0; k < 1000; ++k) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Parallel, RunsEveryIndexAndRethrows) {
  std::atomic<int> sum{0};
  parallel_for(100, [&](std::size_t i) { sum += static_cast<int>(i); });
  EXPECT_EQ(sum.load(), 4950);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw Error(ErrorKind::InvalidArgument, "boom");
               }),
               Error);
}

TEST(Run, EveryExperimentWritesItsArtifacts) {
  struct Case {
    nlohmann::json config;
    std::vector<std::string> files;
  };
  const std::vector<Case> cases{
      {{{"experiment", "simulate"}, {"times", {0.0, 2.0}}, {"grid", {{"n", 257}}}},
       {"lagrangian_1.csv", "eulerian_1.csv", "eulerian_1.measure.json", "trajectory.json"}},
      {{{"experiment", "metric"}, {"scenario", "twochar"}, {"target", "still"}, {"grid", {{"n", 129}}}, {"metric", {{"controls", 1}}}},
       {"metric_report.json"}},
      {{{"experiment", "lipschitz"}, {"grid", {{"n", 129}}}, {"lipschitz", {{"pairs", 2}, {"times", {0.5}}}}}, {"lipschitz.csv"}},
      {{{"experiment", "converge"}, {"scenario", "dirac8"}, {"times", {1.0}}, {"converge", {{"ladder", {128, 256}}}}}, {"converge.csv"}},
      {{{"experiment", "validate"}, {"scenario", "twochar"}, {"grid", {{"n", 257}}}}, {"validate.json"}},
  };
  for (const Case& c : cases) {
    RunConfig cfg = parse_config(c.config);
    cfg.out_dir = scratch(to_string(cfg.experiment));
    const RunResult r = run(cfg);
    EXPECT_EQ(r.exit_code, 0) << c.config.dump() << r.summary.dump();
    for (const std::string& f : c.files) EXPECT_TRUE(fs::exists(cfg.out_dir / f)) << f;
    const nlohmann::json manifest = read_json(cfg.out_dir / "manifest.json");
    EXPECT_EQ(manifest.at("experiment"), to_string(cfg.experiment));
    EXPECT_EQ(manifest.at("version"), version());
    EXPECT_TRUE(manifest.contains("tolerances"));
  }
}

TEST(Run, MetricNeedsTarget) {
  RunConfig cfg = parse_config({{"experiment", "metric"}});
  cfg.out_dir = scratch("notarget");
  EXPECT_THROW(run(cfg), Error);
}
