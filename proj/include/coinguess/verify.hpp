#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coinguess/stats.hpp"

namespace coinguess {

// One verified claim: the closed-form value, the exact-oracle value, and a
// Monte Carlo estimate, with n/a markers where a leg does not apply.
// Verdicts: "agree" (all applicable legs consistent), "FINDING" (the
// closed form and the forward-model oracle genuinely part ways; expected
// and surfaced, not a failure), "disagree" (anything else off).
struct VerificationRow {
  std::string claim;
  std::optional<double> analytic;
  std::optional<double> oracle;
  std::optional<SuccessEstimate> estimate;
  std::string verdict;
  std::string note;
};

struct VerificationReport {
  std::vector<VerificationRow> rows;

  // True iff no row ended in "disagree"; FINDING rows do not fail a report.
  bool passed() const;
};

// Runs the whole claim suite: envelope switch rule, linear postdiction and
// its known-station control, both prediction sequencings, the masked named
// track, shared-pointer equivalence, the circular conditional formula, the
// circular average versus the forward model (the FINDING rows), and the
// sleeper chain's stationary law and origin posterior. `trial_budget` is
// the Monte Carlo size per claim, at least 1e5.
VerificationReport verify_all(std::uint64_t seed, std::uint64_t trial_budget);

std::string render_table(const VerificationReport& report);
nlohmann::json report_to_json(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);

}  // namespace coinguess
