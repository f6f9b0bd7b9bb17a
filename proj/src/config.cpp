#include "coinguess/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "coinguess/circular.hpp"
#include "coinguess/envelope.hpp"
#include "coinguess/markov.hpp"
#include "coinguess/pointer.hpp"
#include "coinguess/railroad.hpp"
#include "coinguess/stats.hpp"

namespace coinguess {

namespace {

using nlohmann::json;

const char* const kKnownKeys[] = {
    "scenario",    "trials",      "seed",          "confidence",
    "format",      "out",         "pointer",       "lesser",
    "greater",     "mode",        "destination",   "origin",
    "west_bias",   "stations_file", "stations",    "arcs",
    "rs_policy",   "min_end_distance"};

bool known_key(const std::string& key) {
  for (const char* k : kKnownKeys) {
    if (key == k) return true;
  }
  return false;
}

template <typename T>
T get_as(const json& doc, const std::string& key, const std::string& source,
         const char* type_name) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(source + ": key '" + key + "' must be " + type_name);
  }
}

std::string effective_pointer(const ExperimentConfig& config) {
  if (!config.pointer.empty()) return config.pointer;
  return config.scenario == "envelope" ? "uniform:0,3" : "uniform:0,10";
}

std::int64_t effective_rail_destination(const ExperimentConfig& config) {
  return config.destination.value_or(4);
}

RsPolicy parse_rs_policy(const std::string& spec, std::size_t stations) {
  if (spec == "opposite") return RsPolicy::opposite_passenger();
  const std::string prefix = "fixed:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string idx = spec.substr(prefix.size());
    std::size_t used = 0;
    unsigned long long station = 0;
    try {
      station = std::stoull(idx, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != idx.size() || idx.empty()) {
      throw ConfigError("circular.rs_policy: bad station index '" + idx + "'");
    }
    if (station >= stations) {
      throw ConfigError("circular.rs_policy: fixed station " + idx +
                        " is outside 0.." + std::to_string(stations - 1));
    }
    return RsPolicy::fixed_station(static_cast<std::size_t>(station));
  }
  throw ConfigError("circular.rs_policy: expected 'opposite' or 'fixed:<station>'");
}

std::vector<std::string> read_station_names(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("rail.stations_file: cannot open '" + path + "'");
  }
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) names.push_back(line);
  }
  return names;
}

NamedTrack load_named_track(const ExperimentConfig& config) {
  auto names = read_station_names(config.stations_file);
  if (names.size() < 3) {
    throw ConfigError(
        "rail.stations_file: at least 3 station names required (one per "
        "line, west to east)");
  }
  try {
    return NamedTrack::from_west_to_east(std::move(names));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("rail.stations_file: ") + e.what());
  }
}

ContinuousPointer parse_pointer_checked(const ExperimentConfig& config) {
  try {
    return parse_pointer_spec(effective_pointer(config));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(config.scenario + ".pointer: " + e.what());
  }
}

json make_payload(const std::string& scenario_id, json params,
                  std::uint64_t seed) {
  json payload;
  payload["scenario"] = scenario_id;
  payload["params"] = std::move(params);
  payload["n"] = nullptr;
  payload["k"] = nullptr;
  payload["p_hat"] = nullptr;
  payload["ci_low"] = nullptr;
  payload["ci_high"] = nullptr;
  payload["analytic"] = nullptr;
  payload["oracle"] = nullptr;
  payload["verdict"] = nullptr;
  payload["seed"] = seed;
  return payload;
}

void fill_estimate(json& payload, const SuccessEstimate& estimate) {
  payload["n"] = estimate.trials;
  payload["k"] = estimate.successes;
  payload["p_hat"] = estimate.point_estimate;
  payload["ci_low"] = estimate.ci_low;
  payload["ci_high"] = estimate.ci_high;
  payload["verdict"] = to_string(estimate.verdict);
}

RunOptions options_for(const ExperimentConfig& config,
                       std::optional<double> target) {
  RunOptions options;
  options.confidence = config.confidence;
  options.target = target;
  return options;
}

RunResult run_envelope(const ExperimentConfig& config) {
  const ContinuousPointer dist = parse_pointer_checked(config);
  const EnvelopePair pair(config.lesser, config.greater);
  const double analytic = analytic_success(dist, pair);
  const auto estimate = run_trials(
      [&](RngStream& rng) { return play_round(pair, dist, rng); },
      config.trials, config.seed, options_for(config, analytic));
  json payload = make_payload(
      "envelope",
      json{{"pointer", effective_pointer(config)},
           {"lesser", config.lesser},
           {"greater", config.greater}},
      config.seed);
  payload["analytic"] = analytic;
  fill_estimate(payload, estimate);
  return {std::move(payload), 0};
}

RunResult run_rail(const ExperimentConfig& config) {
  const std::uint64_t seed = config.seed;
  if (!config.stations_file.empty()) {
    const NamedTrack track = load_named_track(config);
    const double oracle = enumerate_named_postdiction(track);
    const auto estimate = run_trials(
        [&](RngStream& rng) { return simulate_named_postdiction(track, rng); },
        config.trials, seed, options_for(config, oracle));
    json payload = make_payload(
        "rail-named",
        json{{"mode", "postdiction"},
             {"stations_file", config.stations_file},
             {"station_count", track.station_count()}},
        seed);
    payload["oracle"] = oracle;
    fill_estimate(payload, estimate);
    return {std::move(payload), 0};
  }

  const ContinuousPointer dist = parse_pointer_checked(config);
  if (config.mode == "control") {
    const double analytic = 0.5;
    const double oracle =
        enumerate_origin_first(dist, static_cast<int>(config.origin));
    const auto estimate = run_trials(
        [&](RngStream& rng) {
          return simulate_known_station(static_cast<int>(config.origin), dist,
                                        Coin::fair(), rng);
        },
        config.trials, seed, options_for(config, analytic));
    json payload = make_payload("rail-control",
                                json{{"mode", "control"},
                                     {"origin", config.origin},
                                     {"pointer", effective_pointer(config)}},
                                seed);
    payload["analytic"] = analytic;
    payload["oracle"] = oracle;
    fill_estimate(payload, estimate);
    return {std::move(payload), 0};
  }
  if (config.mode == "predict-origin-first") {
    const auto scenario = LinearScenario::prediction_origin_first(
        static_cast<int>(config.origin), dist);
    const double analytic = 0.5;
    const double oracle =
        enumerate_origin_first(dist, static_cast<int>(config.origin));
    const auto estimate = run_trials(
        [&](RngStream& rng) { return simulate_prediction(scenario, rng); },
        config.trials, seed, options_for(config, analytic));
    json payload = make_payload("rail-predict-origin-first",
                                json{{"mode", config.mode},
                                     {"origin", config.origin},
                                     {"pointer", effective_pointer(config)}},
                                seed);
    payload["analytic"] = analytic;
    payload["oracle"] = oracle;
    fill_estimate(payload, estimate);
    return {std::move(payload), 0};
  }

  const std::int64_t destination = effective_rail_destination(config);
  const double analytic = postdiction_success_with_bias(
      dist, static_cast<int>(destination), config.west_bias);
  LinearScenario scenario =
      config.mode == "postdiction"
          ? LinearScenario::postdiction(static_cast<int>(destination), dist)
          : LinearScenario::prediction_destination_first(
                static_cast<int>(destination), dist);
  scenario.west_origin_probability = config.west_bias;
  const auto estimate = run_trials(
      [&](RngStream& rng) {
        return scenario.mode == TrialMode::Postdiction
                   ? simulate_postdiction(scenario, rng)
                   : simulate_prediction(scenario, rng);
      },
      config.trials, seed, options_for(config, analytic));
  json payload = make_payload(
      config.mode == "postdiction" ? "rail-postdiction"
                                   : "rail-predict-dest-first",
      json{{"mode", config.mode},
           {"destination", destination},
           {"pointer", effective_pointer(config)},
           {"west_bias", config.west_bias}},
      seed);
  payload["analytic"] = analytic;
  fill_estimate(payload, estimate);
  return {std::move(payload), 0};
}

RunResult run_circular(const ExperimentConfig& config) {
  const std::size_t stations = static_cast<std::size_t>(config.stations);
  ArcWeights arcs = [&] {
    try {
      return parse_arc_spec(config.arcs, stations);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("circular.arcs: ") + e.what());
    }
  }();
  const CircularTrack track(stations, std::move(arcs));
  const RsPolicy policy = parse_rs_policy(config.rs_policy, stations);

  json params{{"stations", stations},
              {"arcs", config.arcs},
              {"rs_policy", policy.label()}};

  if (config.destination) {
    const std::size_t k = static_cast<std::size_t>(*config.destination);
    params["destination"] = k;
    const double oracle =
        conditional_success_given_destination(track, k, policy);
    std::optional<double> analytic;
    if (policy.kind() == RsPolicy::Kind::FixedStation) {
      try {
        analytic = closed_form_conditional_success(
            track, k, policy.fixed_station_index());
      } catch (const std::invalid_argument&) {
        // rs falls inside the destination's minor arc; no closed form there
      }
    }
    const auto estimate = run_trials(
        [&](RngStream& rng) {
          return simulate_conditional(track, k, policy, rng);
        },
        config.trials, config.seed, options_for(config, oracle));
    json payload =
        make_payload("circular-conditional", std::move(params), config.seed);
    if (analytic) payload["analytic"] = *analytic;
    payload["oracle"] = oracle;
    fill_estimate(payload, estimate);
    return {std::move(payload), 0};
  }

  const double analytic = closed_form_average_success(track);
  std::optional<double> oracle;
  if (stations <= 64) oracle = enumerate_exact(track, policy);
  const auto estimate = run_trials(
      [&](RngStream& rng) { return simulate_forward(track, policy, rng); },
      config.trials, config.seed,
      options_for(config, oracle ? oracle : std::optional<double>(analytic)));
  json payload = make_payload("circular", std::move(params), config.seed);
  payload["analytic"] = analytic;
  if (oracle) payload["oracle"] = *oracle;
  fill_estimate(payload, estimate);
  return {std::move(payload), 0};
}

RunResult run_markov(const ExperimentConfig& config) {
  const ReflectingChain chain(static_cast<std::size_t>(config.stations));
  json params{{"stations", config.stations},
              {"min_end_distance", config.min_end_distance}};
  double analytic = 0.0;
  double oracle = 0.0;
  if (config.destination) {
    const std::size_t d = static_cast<std::size_t>(*config.destination);
    params["destination"] = d;
    params["quantity"] = "origin_posterior_west";
    analytic = 0.5;
    oracle = origin_posterior(chain, d).first;
  } else {
    params["quantity"] = "stationary_end_probability";
    analytic = closed_form_stationary(chain).front();
    oracle = stationary_distribution(chain).front();
  }
  json payload = make_payload("markov", std::move(params), config.seed);
  payload["analytic"] = analytic;
  payload["oracle"] = oracle;
  payload["verdict"] = std::abs(analytic - oracle) <= 1e-10 ? "agree" : "disagree";
  return {std::move(payload), 0};
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string csv_field(const json& value) {
  if (value.is_null()) return "";
  if (value.is_string()) return csv_quote(value.get<std::string>());
  return csv_quote(value.dump());
}

}  // namespace

void apply_json_config(ExperimentConfig& config, const json& doc,
                       const std::string& source) {
  if (!doc.is_object()) {
    throw ConfigError(source + ": top level must be a JSON object");
  }
  for (const auto& item : doc.items()) {
    if (!known_key(item.key())) {
      throw ConfigError(source + ": unknown key '" + item.key() + "'");
    }
  }
  if (doc.contains("scenario")) {
    const auto s = get_as<std::string>(doc, "scenario", source, "a string");
    if (!config.scenario.empty() && s != config.scenario) {
      throw ConfigError(source + ": scenario '" + s +
                        "' does not match the invoked subcommand '" +
                        config.scenario + "'");
    }
    config.scenario = s;
  }
  if (doc.contains("trials")) {
    config.trials =
        get_as<std::uint64_t>(doc, "trials", source, "an unsigned integer");
  }
  if (doc.contains("seed")) {
    config.seed =
        get_as<std::uint64_t>(doc, "seed", source, "an unsigned integer");
  }
  if (doc.contains("confidence")) {
    config.confidence = get_as<double>(doc, "confidence", source, "a number");
  }
  if (doc.contains("format")) {
    config.format = get_as<std::string>(doc, "format", source, "a string");
  }
  if (doc.contains("out")) {
    config.out = get_as<std::string>(doc, "out", source, "a string");
  }
  if (doc.contains("pointer")) {
    config.pointer = get_as<std::string>(doc, "pointer", source, "a string");
  }
  if (doc.contains("lesser")) {
    config.lesser = get_as<double>(doc, "lesser", source, "a number");
  }
  if (doc.contains("greater")) {
    config.greater = get_as<double>(doc, "greater", source, "a number");
  }
  if (doc.contains("mode")) {
    config.mode = get_as<std::string>(doc, "mode", source, "a string");
  }
  if (doc.contains("destination")) {
    config.destination =
        get_as<std::int64_t>(doc, "destination", source, "an integer");
  }
  if (doc.contains("origin")) {
    config.origin = get_as<std::int64_t>(doc, "origin", source, "an integer");
  }
  if (doc.contains("west_bias")) {
    config.west_bias = get_as<double>(doc, "west_bias", source, "a number");
  }
  if (doc.contains("stations_file")) {
    config.stations_file =
        get_as<std::string>(doc, "stations_file", source, "a string");
  }
  if (doc.contains("stations")) {
    config.stations =
        get_as<std::uint64_t>(doc, "stations", source, "an unsigned integer");
  }
  if (doc.contains("arcs")) {
    config.arcs = get_as<std::string>(doc, "arcs", source, "a string");
  }
  if (doc.contains("rs_policy")) {
    config.rs_policy =
        get_as<std::string>(doc, "rs_policy", source, "a string");
  }
  if (doc.contains("min_end_distance")) {
    config.min_end_distance = get_as<std::uint64_t>(doc, "min_end_distance",
                                                    source, "an unsigned integer");
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  ExperimentConfig config;
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config file '" + path + "': cannot open");
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  apply_json_config(config, doc, "config file '" + path + "'");
  return config;
}

void validate(const ExperimentConfig& config) {
  if (config.scenario != "envelope" && config.scenario != "rail" &&
      config.scenario != "circular" && config.scenario != "markov") {
    throw ConfigError("scenario: expected envelope, rail, circular or markov");
  }
  if (config.trials == 0) {
    throw ConfigError("trials: must be at least 1");
  }
  if (!(config.confidence > 0.0 && config.confidence < 1.0)) {
    throw ConfigError("confidence: must lie strictly between 0 and 1");
  }
  if (config.format != "json" && config.format != "csv") {
    throw ConfigError("format: expected 'json' or 'csv'");
  }

  if (config.scenario == "envelope") {
    parse_pointer_checked(config);
    if (!(0.0 < config.lesser && config.lesser < config.greater)) {
      throw ConfigError("envelope: 0 < lesser < greater required");
    }
    return;
  }

  if (config.scenario == "rail") {
    if (!config.stations_file.empty()) {
      if (config.mode != "postdiction") {
        throw ConfigError(
            "rail.mode: the named-track protocol only runs postdiction");
      }
      load_named_track(config);
      return;
    }
    if (config.mode != "postdiction" && config.mode != "predict-dest-first" &&
        config.mode != "predict-origin-first" && config.mode != "control") {
      throw ConfigError(
          "rail.mode: expected postdiction, predict-dest-first, "
          "predict-origin-first or control");
    }
    parse_pointer_checked(config);
    if (!(config.west_bias > 0.0 && config.west_bias < 1.0)) {
      throw ConfigError("rail.west_bias: must lie strictly between 0 and 1");
    }
    return;
  }

  if (config.scenario == "circular") {
    if (config.stations < 5) {
      throw ConfigError("circular.stations: at least 5 stations required");
    }
    try {
      parse_arc_spec(config.arcs, static_cast<std::size_t>(config.stations));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("circular.arcs: ") + e.what());
    }
    parse_rs_policy(config.rs_policy,
                    static_cast<std::size_t>(config.stations));
    if (config.destination) {
      if (*config.destination < 0 ||
          static_cast<std::uint64_t>(*config.destination) >= config.stations) {
        throw ConfigError("circular.destination: station index outside 0.." +
                          std::to_string(config.stations - 1));
      }
    }
    return;
  }

  // markov
  if (config.stations < 3) {
    throw ConfigError("markov.stations: at least 3 stations required");
  }
  std::vector<std::size_t> eligible;
  try {
    eligible = wake_filter(ReflectingChain(config.stations),
                           static_cast<std::size_t>(config.min_end_distance));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("markov.min_end_distance: ") + e.what());
  }
  if (config.destination) {
    const auto d = *config.destination;
    if (d < 1 || static_cast<std::uint64_t>(d) > config.stations ||
        std::find(eligible.begin(), eligible.end(),
                  static_cast<std::size_t>(d)) == eligible.end()) {
      std::ostringstream msg;
      msg << "markov.destination: station " << d
          << " is not observable at min_end_distance "
          << config.min_end_distance << "; eligible: " << eligible.front()
          << ".." << eligible.back();
      throw ConfigError(msg.str());
    }
  }
}

RunResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  if (config.scenario == "envelope") return run_envelope(config);
  if (config.scenario == "rail") return run_rail(config);
  if (config.scenario == "circular") return run_circular(config);
  return run_markov(config);
}

std::string render_payload(const json& payload, const std::string& format) {
  if (format == "json") {
    return payload.dump(2) + "\n";
  }
  if (format != "csv") {
    throw ConfigError("format: expected 'json' or 'csv'");
  }
  static const char* const kColumns[] = {
      "scenario", "params", "n",        "k",      "p_hat", "ci_low",
      "ci_high",  "analytic", "oracle", "verdict", "seed"};
  std::ostringstream out;
  bool first = true;
  for (const char* col : kColumns) {
    if (!first) out << ',';
    out << col;
    first = false;
  }
  out << '\n';
  first = true;
  for (const char* col : kColumns) {
    if (!first) out << ',';
    out << csv_field(payload.at(col));
    first = false;
  }
  out << '\n';
  return out.str();
}

}  // namespace coinguess
