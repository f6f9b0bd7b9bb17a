#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coinguess/config.hpp"
#include "coinguess/verify.hpp"

using namespace coinguess;
using nlohmann::json;

namespace {

ExperimentConfig small_envelope() {
  ExperimentConfig c;
  c.scenario = "envelope";
  c.trials = 20000;
  c.seed = 4;
  return c;
}

// Scratch file helper; removes the file when the test block ends.
struct TempFile {
  std::filesystem::path path;

  TempFile(const std::string& name, const std::string& contents)
      : path(std::filesystem::temp_directory_path() / name) {
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("payload carries exactly the report keys") {
  const RunResult result = run_experiment(small_envelope());
  CHECK(result.exit_code == 0);
  const std::vector<std::string> expected = {
      "analytic", "ci_high", "ci_low", "k",    "n",   "oracle",
      "p_hat",    "params",  "scenario", "seed", "verdict"};
  std::vector<std::string> keys;
  for (const auto& item : result.payload.items()) keys.push_back(item.key());
  std::sort(keys.begin(), keys.end());
  CHECK(keys == expected);
  CHECK(result.payload["scenario"] == "envelope");
  CHECK(result.payload["seed"] == 4);
  CHECK(result.payload["n"] == 20000);
}

TEST_CASE("identical configs render byte-identical reports") {
  const ExperimentConfig config = small_envelope();
  const std::string a = render_payload(run_experiment(config).payload, "json");
  const std::string b = render_payload(run_experiment(config).payload, "json");
  CHECK(a == b);
  const std::string csv_a =
      render_payload(run_experiment(config).payload, "csv");
  const std::string csv_b =
      render_payload(run_experiment(config).payload, "csv");
  CHECK(csv_a == csv_b);
}

TEST_CASE("csv rendering: frozen header, quoted fields") {
  const std::string csv =
      render_payload(run_experiment(small_envelope()).payload, "csv");
  const std::string header =
      "scenario,params,n,k,p_hat,ci_low,ci_high,analytic,oracle,verdict,seed";
  REQUIRE(csv.rfind(header + "\n", 0) == 0);
  // Exactly two lines, and the params object arrives quoted with its inner
  // quotes doubled per RFC 4180.
  const auto newlines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(newlines == 2);
  CHECK(csv.find("\"{\"\"") != std::string::npos);

  CHECK_THROWS_AS(render_payload(json::object(), "yaml"), ConfigError);
}

TEST_CASE("json config application") {
  ExperimentConfig config;
  config.scenario = "envelope";

  SUBCASE("unknown keys are rejected") {
    CHECK_THROWS_WITH_AS(
        apply_json_config(config, json{{"trails", 100}}, "test"),
        "test: unknown key 'trails'", ConfigError);
  }
  SUBCASE("mistyped values are rejected") {
    CHECK_THROWS_AS(apply_json_config(config, json{{"trials", "many"}}, "test"),
                    ConfigError);
    CHECK_THROWS_AS(apply_json_config(config, json{{"lesser", "small"}}, "test"),
                    ConfigError);
    CHECK_THROWS_AS(apply_json_config(config, json::array(), "test"),
                    ConfigError);
  }
  SUBCASE("scenario must match the invoked subcommand") {
    CHECK_THROWS_AS(
        apply_json_config(config, json{{"scenario", "rail"}}, "test"),
        ConfigError);
  }
  SUBCASE("valid keys land in the config") {
    apply_json_config(config,
                      json{{"trials", 5000},
                           {"seed", 9},
                           {"pointer", "uniform:0,3"},
                           {"greater", 4.0}},
                      "test");
    CHECK(config.trials == 5000);
    CHECK(config.seed == 9);
    CHECK(config.pointer == "uniform:0,3");
    CHECK(config.greater == 4.0);
  }
}

TEST_CASE("config files load and report their own errors") {
  SUBCASE("round trip") {
    TempFile file("coinguess_cfg_ok.json",
                  R"({"scenario": "rail", "mode": "control", "trials": 777})");
    const ExperimentConfig config = load_config_file(file.path.string());
    CHECK(config.scenario == "rail");
    CHECK(config.mode == "control");
    CHECK(config.trials == 777);
  }
  SUBCASE("malformed json") {
    TempFile file("coinguess_cfg_bad.json", "{ not json");
    CHECK_THROWS_AS(load_config_file(file.path.string()), ConfigError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_config_file("/nonexistent/coinguess.json"),
                    ConfigError);
  }
}

TEST_CASE("validation rejects bad configurations with field paths") {
  ExperimentConfig config;

  SUBCASE("scenario") {
    config.scenario = "teleport";
    CHECK_THROWS_AS(validate(config), ConfigError);
  }
  SUBCASE("trials and confidence") {
    config.scenario = "envelope";
    config.trials = 0;
    CHECK_THROWS_AS(validate(config), ConfigError);
    config.trials = 10;
    config.confidence = 1.0;
    CHECK_THROWS_AS(validate(config), ConfigError);
  }
  SUBCASE("format") {
    config.scenario = "envelope";
    config.format = "xml";
    CHECK_THROWS_AS(validate(config), ConfigError);
  }
  SUBCASE("envelope amounts") {
    config.scenario = "envelope";
    config.lesser = 2.0;
    config.greater = 1.0;
    CHECK_THROWS_AS(validate(config), ConfigError);
    config.lesser = 0.0;
    config.greater = 1.0;
    CHECK_THROWS_AS(validate(config), ConfigError);
  }
  SUBCASE("envelope pointer spec") {
    config.scenario = "envelope";
    config.pointer = "pareto:1";
    CHECK_THROWS_WITH_AS(validate(config),
                         doctest::Contains("envelope.pointer"), ConfigError);
  }
  SUBCASE("rail mode") {
    config.scenario = "rail";
    config.mode = "retrodiction";
    CHECK_THROWS_WITH_AS(validate(config), doctest::Contains("rail.mode"),
                         ConfigError);
  }
  SUBCASE("rail west bias") {
    config.scenario = "rail";
    config.west_bias = 1.0;
    CHECK_THROWS_AS(validate(config), ConfigError);
  }
  SUBCASE("circular station floor") {
    config.scenario = "circular";
    config.stations = 4;
    CHECK_THROWS_WITH_AS(validate(config),
                         doctest::Contains("at least 5 stations"),
                         ConfigError);
  }
  SUBCASE("circular rs policy bounds") {
    config.scenario = "circular";
    config.stations = 10;
    config.rs_policy = "fixed:12";
    CHECK_THROWS_WITH_AS(validate(config),
                         doctest::Contains("circular.rs_policy"), ConfigError);
    config.rs_policy = "nearest";
    CHECK_THROWS_AS(validate(config), ConfigError);
  }
  SUBCASE("circular arcs") {
    config.scenario = "circular";
    config.arcs = "arcs:1,2,3";  // wrong count for 10 stations
    CHECK_THROWS_WITH_AS(validate(config), doctest::Contains("circular.arcs"),
                         ConfigError);
  }
  SUBCASE("circular destination") {
    config.scenario = "circular";
    config.destination = 10;
    CHECK_THROWS_WITH_AS(validate(config),
                         doctest::Contains("circular.destination"),
                         ConfigError);
  }
  SUBCASE("markov destination eligibility") {
    config.scenario = "markov";
    config.stations = 10;
    config.destination = 2;  // too close to the reflecting end
    CHECK_THROWS_WITH_AS(validate(config),
                         doctest::Contains("not observable"), ConfigError);
    config.destination = 5;
    CHECK_NOTHROW(validate(config));
  }
  SUBCASE("markov min_end_distance leaves no station") {
    config.scenario = "markov";
    config.stations = 6;  // needs at least 7 for the default distance 3
    CHECK_THROWS_WITH_AS(validate(config),
                         doctest::Contains("markov.min_end_distance"),
                         ConfigError);
  }
}

TEST_CASE("named rail track: file handling and the postdiction-only rule") {
  ExperimentConfig config;
  config.scenario = "rail";

  SUBCASE("three names make a track") {
    TempFile file("coinguess_names_ok.txt", "Mill\nAlder\nQuay\n");
    config.stations_file = file.path.string();
    CHECK_NOTHROW(validate(config));
  }
  SUBCASE("two names are too few") {
    TempFile file("coinguess_names_two.txt", "Mill\nAlder\n");
    config.stations_file = file.path.string();
    CHECK_THROWS_WITH_AS(validate(config),
                         doctest::Contains("at least 3 station names"),
                         ConfigError);
  }
  SUBCASE("duplicate names are rejected") {
    TempFile file("coinguess_names_dup.txt", "Mill\nAlder\nMill\n");
    config.stations_file = file.path.string();
    CHECK_THROWS_AS(validate(config), ConfigError);
  }
  SUBCASE("missing file") {
    config.stations_file = "/nonexistent/stations.txt";
    CHECK_THROWS_WITH_AS(validate(config), doctest::Contains("cannot open"),
                         ConfigError);
  }
  SUBCASE("only postdiction mode runs on a named track") {
    TempFile file("coinguess_names_mode.txt", "Mill\nAlder\nQuay\n");
    config.stations_file = file.path.string();
    config.mode = "control";
    CHECK_THROWS_WITH_AS(validate(config),
                         doctest::Contains("only runs postdiction"),
                         ConfigError);
  }
}

TEST_CASE("markov runs report the analytic/oracle comparison only") {
  ExperimentConfig config;
  config.scenario = "markov";
  config.stations = 12;
  config.destination = 6;
  const RunResult result = run_experiment(config);
  CHECK(result.exit_code == 0);
  CHECK(result.payload["verdict"] == "agree");
  CHECK(result.payload["n"].is_null());
  CHECK(result.payload["p_hat"].is_null());
  CHECK(result.payload["analytic"].is_number());
  CHECK(result.payload["oracle"].is_number());
}

TEST_CASE("verify_all runs the claim suite") {
  const VerificationReport report = verify_all(7, 100000);
  CHECK(report.rows.size() >= 10);
  CHECK(report.passed());

  int findings = 0;
  for (const auto& row : report.rows) {
    CHECK(!row.claim.empty());
    CHECK((row.verdict == "agree" || row.verdict == "FINDING"));
    if (row.verdict == "FINDING") ++findings;
  }
  CHECK(findings >= 1);

  // Rendered forms mention every claim.
  const std::string table = render_table(report);
  const json doc = report_to_json(report);
  const std::string csv = report_to_csv(report);
  CHECK(doc["passed"] == true);
  REQUIRE(doc["rows"].is_array());
  CHECK(doc["rows"].size() == report.rows.size());
  for (const auto& row : report.rows) {
    CHECK(table.find(row.claim) != std::string::npos);
    CHECK(csv.find(row.claim) != std::string::npos);
  }

  CHECK_THROWS_AS(verify_all(7, 99999), std::invalid_argument);
}

}  // TEST_SUITE
