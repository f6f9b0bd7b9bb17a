// Command line front end: one subcommand per scenario plus `verify`, which
// runs the whole claim suite. Flags mirror the JSON config keys; a --config
// file supplies defaults and explicitly passed flags win over it.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "coinguess/config.hpp"
#include "coinguess/verify.hpp"

namespace {

using coinguess::ConfigError;
using coinguess::ExperimentConfig;

// One bag of locals shared by every subcommand; only one subcommand parses
// per invocation, and overrides are keyed on each subcommand's own counts.
struct Flags {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  double confidence = 0.95;
  std::string format = "json";
  std::string out;
  std::string config_path;

  std::string pointer;
  double lesser = 1.0;
  double greater = 2.0;

  std::string mode = "postdiction";
  std::int64_t destination = 0;
  std::int64_t origin = 5;
  double west_bias = 0.5;
  std::string stations_file;

  std::uint64_t stations = 10;
  std::string arcs = "uniform";
  std::string rs_policy = "opposite";
  std::uint64_t min_end_distance = 3;
};

void add_common_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--trials", f.trials, "Monte Carlo trial count");
  sub->add_option("--seed", f.seed, "master seed; fixes every stream");
  sub->add_option("--confidence", f.confidence,
                  "confidence level for the interval, in (0,1)");
  sub->add_option("--format", f.format, "output format: json or csv");
  sub->add_option("--out", f.out, "write the report here instead of stdout");
  sub->add_option("--config", f.config_path,
                  "JSON config file; explicit flags override its values")
      ->check(CLI::ExistingFile);
}

void apply_config_file(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config file '" + path + "': cannot open");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  coinguess::apply_json_config(config, doc, "config file '" + path + "'");
}

// True iff the subcommand both defines this option and saw it on the line.
bool passed(const CLI::App* sub, const std::string& name) {
  const auto* option = sub->get_option_no_throw(name);
  return option != nullptr && option->count() > 0;
}

ExperimentConfig build_config(const std::string& scenario, const CLI::App* sub,
                              const Flags& f) {
  ExperimentConfig config;
  config.scenario = scenario;
  if (passed(sub, "--config")) apply_config_file(config, f.config_path);

  if (passed(sub, "--trials")) config.trials = f.trials;
  if (passed(sub, "--seed")) config.seed = f.seed;
  if (passed(sub, "--confidence")) config.confidence = f.confidence;
  if (passed(sub, "--format")) config.format = f.format;
  if (passed(sub, "--out")) config.out = f.out;

  if (passed(sub, "--pointer")) config.pointer = f.pointer;
  if (passed(sub, "--lesser")) config.lesser = f.lesser;
  if (passed(sub, "--greater")) config.greater = f.greater;

  if (passed(sub, "--mode")) config.mode = f.mode;
  if (passed(sub, "--destination")) config.destination = f.destination;
  if (passed(sub, "--origin")) config.origin = f.origin;
  if (passed(sub, "--west-bias")) config.west_bias = f.west_bias;
  if (passed(sub, "--stations-file")) config.stations_file = f.stations_file;

  if (passed(sub, "--stations")) config.stations = f.stations;
  if (passed(sub, "--arcs")) config.arcs = f.arcs;
  if (passed(sub, "--rs-policy")) config.rs_policy = f.rs_policy;
  if (passed(sub, "--min-end-distance"))
    config.min_end_distance = f.min_end_distance;
  return config;
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return 2;
  }
  out << text;
  return 0;
}

int run_scenario(const std::string& scenario, const CLI::App* sub,
                 const Flags& f) {
  const ExperimentConfig config = build_config(scenario, sub, f);
  const auto result = coinguess::run_experiment(config);
  const std::string rendered =
      coinguess::render_payload(result.payload, config.format);
  const int emit_code = emit(rendered, config.out);
  return emit_code != 0 ? emit_code : result.exit_code;
}

int run_verify(std::uint64_t seed, std::uint64_t budget,
               const std::string& format, const std::string& out_path) {
  if (format != "table" && format != "json" && format != "csv") {
    throw ConfigError("verify.format: expected table, json or csv");
  }
  coinguess::VerificationReport report;
  try {
    report = coinguess::verify_all(seed, budget);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("verify: ") + e.what());
  }
  std::string rendered;
  if (format == "table") {
    rendered = coinguess::render_table(report);
  } else if (format == "json") {
    rendered = coinguess::report_to_json(report).dump(2) + "\n";
  } else {
    rendered = coinguess::report_to_csv(report);
  }
  const int emit_code = emit(rendered, out_path);
  if (emit_code != 0) return emit_code;
  return report.passed() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulators and exact calculators for coin-direction guessing games "
      "on trains and envelopes"};
  app.require_subcommand(1);
  Flags f;

  auto* envelope = app.add_subcommand(
      "envelope", "two sealed amounts, keep or switch on a random pointer");
  add_common_flags(envelope, f);
  envelope->add_option("--pointer", f.pointer,
                       "pointer law: uniform:a,b | exp:rate | normal:mean,sd");
  envelope->add_option("--lesser", f.lesser, "smaller amount, > 0");
  envelope->add_option("--greater", f.greater, "larger amount, > lesser");

  auto* rail = app.add_subcommand(
      "rail", "one-stop trip on a linear track, guess the travel direction");
  add_common_flags(rail, f);
  rail->add_option("--mode", f.mode,
                   "postdiction | predict-dest-first | predict-origin-first | "
                   "control");
  rail->add_option("--pointer", f.pointer,
                   "pointer law: uniform:a,b | exp:rate | normal:mean,sd");
  rail->add_option("--destination", f.destination,
                   "destination station coordinate");
  rail->add_option("--origin", f.origin,
                   "origin coordinate (origin-first and control modes)");
  rail->add_option("--west-bias", f.west_bias,
                   "P(origin is the western neighbor), default 1/2");
  rail->add_option("--stations-file", f.stations_file,
                   "file of station names west to east; runs the masked "
                   "named-track protocol instead");

  auto* circular = app.add_subcommand(
      "circular", "one-stop trip on a circular track with weighted arcs");
  add_common_flags(circular, f);
  circular->add_option("--stations", f.stations, "station count, at least 5");
  circular->add_option("--arcs", f.arcs,
                       "arc weights: uniform | arcs:w0,w1,... (one per arc)");
  circular->add_option("--rs-policy", f.rs_policy,
                       "reference station rule: opposite | fixed:<station>");
  circular->add_option("--destination", f.destination,
                       "condition on this destination station");

  auto* markov = app.add_subcommand(
      "markov", "sleeper on a reflecting random walk; stationary law and "
                "origin posterior");
  add_common_flags(markov, f);
  markov->add_option("--stations", f.stations, "station count, at least 3");
  markov->add_option("--destination", f.destination,
                     "waking station; must sit min-end-distance from both "
                     "ends");
  markov->add_option("--min-end-distance", f.min_end_distance,
                     "stations this far from both ends admit waking");

  std::uint64_t verify_budget = 1'000'000;
  std::uint64_t verify_seed = 1;
  std::string verify_format = "table";
  std::string verify_out;
  auto* verify = app.add_subcommand(
      "verify", "run every closed form against its oracle and a simulation");
  verify->add_option("--trials", verify_budget,
                     "Monte Carlo trials per claim, at least 100000");
  verify->add_option("--seed", verify_seed, "master seed for the suite");
  verify->add_option("--format", verify_format, "table | json | csv");
  verify->add_option("--out", verify_out,
                     "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
    if (envelope->parsed()) return run_scenario("envelope", envelope, f);
    if (rail->parsed()) return run_scenario("rail", rail, f);
    if (circular->parsed()) return run_scenario("circular", circular, f);
    if (markov->parsed()) return run_scenario("markov", markov, f);
    return run_verify(verify_seed, verify_budget, verify_format, verify_out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
