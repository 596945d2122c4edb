#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "test_support.hpp"

namespace {

const std::string kCli = PEANUT_CLI_PATH;
const std::string kConfig = std::string(PEANUT_FIXTURE_DIR) + "/tracker_config.json";

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string dir = testsup::scratch_dir("cli_io_" + std::to_string(counter++));
  const std::string out_path = dir + "/stdout.txt";
  const std::string err_path = dir + "/stderr.txt";
  const std::string command = kCli + " " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(command.c_str());
  RunResult result;
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  result.exit_code = WEXITSTATUS(status);
  result.out = testsup::read_file(out_path);
  result.err = testsup::read_file(err_path);
  return result;
}

// Ingests the tracker fixtures once and hands out the frame path.
const std::string& tracker_frame() {
  static std::string path = [] {
    const std::string dir = testsup::scratch_dir("cli_tracker");
    const std::string frame_path = dir + "/frame.json";
    RunResult r = run_cli("ingest --config " + kConfig + " --out " + frame_path);
    REQUIRE(r.exit_code == 0);
    return frame_path;
  }();
  return path;
}

}  // namespace

TEST_CASE("bare invocation and --help") {
  RunResult bare = run_cli("");
  CHECK(bare.exit_code == 1);
  CHECK(bare.err.find("usage") != std::string::npos);

  RunResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("bench") != std::string::npos);
  CHECK(help.out.find("simulate") != std::string::npos);

  RunResult unknown = run_cli("frobnicate");
  CHECK(unknown.exit_code == 1);
}

TEST_CASE("simulate requires a seed and is reproducible") {
  const std::string dir = testsup::scratch_dir("cli_sim");

  RunResult no_seed = run_cli("simulate --n-days 40 --out " + dir + "/a");
  CHECK(no_seed.exit_code == 1);
  CHECK(no_seed.err.find("--seed is required") != std::string::npos);

  RunResult first = run_cli("simulate --n-days 40 --seed 5 --out " + dir + "/a");
  REQUIRE(first.exit_code == 0);
  CHECK(std::filesystem::exists(dir + "/a/truth_full.json"));
  CHECK(std::filesystem::exists(dir + "/a/truth_masked.json"));

  RunResult second = run_cli("simulate --n-days 40 --seed 5 --out " + dir + "/b");
  REQUIRE(second.exit_code == 0);
  CHECK(testsup::read_file(dir + "/a/truth_full.json") ==
        testsup::read_file(dir + "/b/truth_full.json"));
  CHECK(testsup::read_file(dir + "/a/truth_masked.json") ==
        testsup::read_file(dir + "/b/truth_masked.json"));

  RunResult other = run_cli("simulate --n-days 40 --seed 6 --out " + dir + "/c");
  REQUIRE(other.exit_code == 0);
  CHECK(testsup::read_file(dir + "/a/truth_full.json") !=
        testsup::read_file(dir + "/c/truth_full.json"));

  RunResult bad = run_cli("simulate --n-days 40 --seed 5 --relation cubic --out " + dir + "/d");
  CHECK(bad.exit_code != 0);
}

TEST_CASE("describe renders tables, missingness, and scatter") {
  const std::string dir = testsup::scratch_dir("cli_describe");
  REQUIRE(run_cli("simulate --n-days 40 --seed 9 --out " + dir).exit_code == 0);
  const std::string masked = dir + "/truth_masked.json";

  RunResult table = run_cli("describe " + masked);
  REQUIRE(table.exit_code == 0);
  CHECK(table.out.find("count") != std::string::npos);
  CHECK(table.out.find("feature") != std::string::npos);
  CHECK(table.out.find("target") != std::string::npos);

  RunResult stats_json = run_cli("describe " + masked + " --json");
  REQUIRE(stats_json.exit_code == 0);
  auto doc = nlohmann::json::parse(stats_json.out);
  CHECK(doc.at("kind") == "descriptive_stats");

  RunResult missing = run_cli("describe " + masked + " --missing");
  REQUIRE(missing.exit_code == 0);
  CHECK(missing.out.find("rows = 40") != std::string::npos);

  RunResult scatter = run_cli("describe " + masked + " --scatter target");
  REQUIRE(scatter.exit_code == 0);
  auto points = nlohmann::json::parse(scatter.out);
  CHECK(points.at("kind") == "scatter");
  CHECK(points.at("column") == "target");

  RunResult absent = run_cli("describe " + dir + "/nothing.json");
  CHECK(absent.exit_code == 2);
}

TEST_CASE("impute validates its strategy arguments") {
  const std::string dir = testsup::scratch_dir("cli_impute");
  REQUIRE(run_cli("simulate --n-days 40 --seed 9 --out " + dir).exit_code == 0);
  const std::string masked = dir + "/truth_masked.json";

  RunResult no_seed = run_cli("impute " + masked + " --target target --strategy mc --out " +
                              dir + "/mc.json");
  CHECK(no_seed.exit_code == 1);
  CHECK(no_seed.err.find("--seed is required for strategy 'mc'") != std::string::npos);

  RunResult mean = run_cli("impute " + masked + " --target target --strategy mean --out " +
                           dir + "/mean.json");
  REQUIRE(mean.exit_code == 0);
  auto doc = nlohmann::json::parse(testsup::read_file(dir + "/mean.json"));
  CHECK(doc.at("provenance").at("column") == "target");

  RunResult mc = run_cli("impute " + masked + " --target target --strategy mc --seed 3 --out " +
                         dir + "/mc.json");
  REQUIRE(mc.exit_code == 0);
  RunResult mc_again = run_cli("impute " + masked +
                               " --target target --strategy mc --seed 3 --out " + dir +
                               "/mc2.json");
  REQUIRE(mc_again.exit_code == 0);
  CHECK(testsup::read_file(dir + "/mc.json") == testsup::read_file(dir + "/mc2.json"));

  RunResult bad = run_cli("impute " + masked + " --target target --strategy sorcery --out " +
                          dir + "/x.json");
  CHECK(bad.exit_code != 0);
}

TEST_CASE("ingest and fit-ols reproduce the recorded regression") {
  RunResult fit = run_cli("fit-ols " + tracker_frame() + " --y spend_all --x merchants_all");
  REQUIRE(fit.exit_code == 0);
  CHECK(fit.out.find("const") != std::string::npos);
  CHECK(fit.out.find("merchants_all") != std::string::npos);
  CHECK(fit.out.find("0.0582") != std::string::npos);
  CHECK(fit.out.find("1.6710") != std::string::npos);

  RunResult as_json = run_cli("fit-ols " + tracker_frame() +
                              " --y spend_all --x merchants_all --json");
  REQUIRE(as_json.exit_code == 0);
  auto doc = nlohmann::json::parse(as_json.out);
  CHECK(doc.at("n") == 109);
  CHECK(doc.at("coefficients")[1].at("coef").get<double>() ==
        doctest::Approx(1.6710).epsilon(5e-4));

  RunResult unknown = run_cli("fit-ols " + tracker_frame() + " --y spend_all --x nope");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.err.find("unknown_column") != std::string::npos);

  RunResult no_y = run_cli("fit-ols " + tracker_frame() + " --x merchants_all");
  CHECK(no_y.exit_code == 1);
}

TEST_CASE("train-forest writes deterministic models and predictions") {
  const std::string dir = testsup::scratch_dir("cli_forest");
  REQUIRE(run_cli("simulate --n-days 60 --seed 2 --out " + dir).exit_code == 0);
  const std::string full = dir + "/truth_full.json";

  RunResult no_seed = run_cli("train-forest " + full + " --y target --x feature --out " +
                              dir + "/f.json");
  CHECK(no_seed.exit_code == 1);
  CHECK(no_seed.err.find("--seed is required for train-forest") != std::string::npos);

  const std::string train_args = " --y target --x feature --n-trees 20 --seed 4 ";
  RunResult first = run_cli("train-forest " + full + train_args + "--out " + dir +
                            "/f1.json --predict-out " + dir + "/p1.json");
  REQUIRE(first.exit_code == 0);
  RunResult second = run_cli("train-forest " + full + train_args + "--out " + dir +
                             "/f2.json --predict-out " + dir + "/p2.json");
  REQUIRE(second.exit_code == 0);
  CHECK(testsup::read_file(dir + "/f1.json") == testsup::read_file(dir + "/f2.json"));
  CHECK(testsup::read_file(dir + "/p1.json") == testsup::read_file(dir + "/p2.json"));

  auto predictions = nlohmann::json::parse(testsup::read_file(dir + "/p1.json"));
  CHECK(predictions.at("kind") == "predictions");
  CHECK(predictions.at("values").size() == 60);
}

TEST_CASE("bench produces a full report directory") {
  const std::string dir = testsup::scratch_dir("cli_bench");

  RunResult first = run_cli("bench --config " + kConfig + " --folds 3 --out " + dir + "/a");
  REQUIRE(first.exit_code == 0);
  const std::string report = testsup::read_file(dir + "/a/report.txt");
  CHECK(report.find("Model 1") != std::string::npos);
  CHECK(report.find("Model 5") != std::string::npos);
  CHECK(report.find("cross-validation summary") != std::string::npos);
  auto doc = nlohmann::json::parse(testsup::read_file(dir + "/a/report.json"));
  CHECK(doc.at("kind") == "benchmark_report");
  CHECK(doc.at("models").size() == 5);
  CHECK(std::filesystem::exists(dir + "/a/ols_model_1.txt"));
  CHECK(std::filesystem::exists(dir + "/a/ols_model_5.txt"));

  RunResult second = run_cli("bench --config " + kConfig + " --folds 3 --out " + dir + "/b");
  REQUIRE(second.exit_code == 0);
  CHECK(testsup::read_file(dir + "/a/report.txt") == testsup::read_file(dir + "/b/report.txt"));
  CHECK(testsup::read_file(dir + "/a/report.json") ==
        testsup::read_file(dir + "/b/report.json"));
  for (int id = 1; id <= 5; ++id) {
    const std::string name = "/ols_model_" + std::to_string(id) + ".txt";
    CHECK(testsup::read_file(dir + "/a" + name) == testsup::read_file(dir + "/b" + name));
  }

  RunResult missing = run_cli("bench --config " + dir + "/absent.json --out " + dir + "/c");
  CHECK(missing.exit_code == 2);

  RunResult bad_folds = run_cli("bench --config " + kConfig + " --folds 1 --out " + dir + "/d");
  CHECK(bad_folds.exit_code == 1);
}
