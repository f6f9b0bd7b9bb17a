#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace coinguess {

// Configuration or validation problem; the message carries the offending
// field path. Maps to exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a single experiment run needs. Mirrors the CLI flags one to
// one; a JSON config file uses the same keys, and explicitly passed flags
// win over the file.
struct ExperimentConfig {
  std::string scenario;  // envelope | rail | circular | markov

  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  double confidence = 0.95;
  std::string format = "json";  // json | csv
  std::string out;              // empty = stdout

  // envelope
  std::string pointer;  // empty = scenario default
  double lesser = 1.0;
  double greater = 2.0;

  // rail
  std::string mode = "postdiction";  // postdiction | predict-dest-first |
                                     // predict-origin-first | control
  std::optional<std::int64_t> destination;
  std::int64_t origin = 5;
  double west_bias = 0.5;
  std::string stations_file;

  // circular and markov
  std::uint64_t stations = 10;
  std::string arcs = "uniform";
  std::string rs_policy = "opposite";  // opposite | fixed:<station>
  std::uint64_t min_end_distance = 3;
};

// Applies the keys of a flat JSON object onto `config`. Unknown keys and
// mistyped values raise ConfigError naming the field; `source` prefixes the
// messages.
void apply_json_config(ExperimentConfig& config, const nlohmann::json& doc,
                       const std::string& source);

ExperimentConfig load_config_file(const std::string& path);

// Full cross-field validation; raises ConfigError with a field path.
void validate(const ExperimentConfig& config);

struct RunResult {
  nlohmann::json payload;
  int exit_code = 0;
};

// Runs the configured experiment and builds the report payload with fields
// {scenario, params, n, k, p_hat, ci_low, ci_high, analytic, oracle,
// verdict, seed}. Fields that do not apply to a scenario are null. Output
// is a pure function of the config, byte for byte.
RunResult run_experiment(const ExperimentConfig& config);

// Payload rendering; format is "json" or "csv" (header plus one row,
// RFC 4180 quoting).
std::string render_payload(const nlohmann::json& payload,
                           const std::string& format);

}  // namespace coinguess
