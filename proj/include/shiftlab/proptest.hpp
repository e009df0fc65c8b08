#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shiftlab/generate.hpp"
#include "shiftlab/io.hpp"

namespace shiftlab {

// Checked: hypotheses held and the conclusion was confirmed. Vacuous: some
// hypothesis failed. Forbidden: a theorem's conclusion was contradicted.
enum class Outcome { Checked, Vacuous, Inconclusive, Forbidden };
const char* to_string(Outcome o);

struct TrialResult {
  int trial = 0;
  Outcome outcome = Outcome::Vacuous;
  std::string detail;
  Json instance;
};

struct PropertyReport {
  TrialConfig config;
  int checked = 0;
  int vacuous = 0;
  int inconclusive = 0;
  int forbidden = 0;
  int skipped = 0;  // generation exhausted
  std::vector<TrialResult> failures;
  std::vector<std::string> skip_log;
  double inconclusive_rate() const;
};

const std::vector<std::string>& property_names();

// Throws InvariantViolation for an unregistered property.
Json generate_instance(const std::string& property, Rng& rng, const TrialConfig& cfg);
std::pair<Outcome, std::string> evaluate_instance(const std::string& property, const Json& instance);

// Trials run on `threads` workers (0: hardware concurrency); the report is
// independent of scheduling.
PropertyReport proptest(const TrialConfig& cfg, unsigned threads = 0);

Json report_to_json(const PropertyReport& r);
// Failure artifact: property, seed, trial, instance, outcome, detail.
Json failure_artifact(const PropertyReport& r, const TrialResult& t);
std::pair<Outcome, std::string> replay(const Json& artifact);

}  // namespace shiftlab
