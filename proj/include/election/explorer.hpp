#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "election/analysis.hpp"
#include "election/model.hpp"

namespace election {

struct SamplerConfig {
  std::size_t m = 2;
  std::size_t n = 2;
  double b = 100.0;
  std::optional<EgoismMode> egoistic;  // constraint on generated instances
  WinModel model = WinModel::LinearLink;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  std::size_t max_attempts_per_trial = 1'000'000;
  std::size_t extremal_cap = 10;  // retained instances per category
  unsigned threads = 0;           // 0 = hardware concurrency
};

// Throws GameError(InvalidInput) unless m, n >= 2, m * n <= 10^4, b >= 1
// and count >= 1.
void validate_sampler_config(const SamplerConfig& cfg);

// Deterministic function of (cfg.seed, trial_index): each candidate's
// (own, rival) is drawn uniformly over own + rival <= b by rejection, the
// instance is canonicalized, and when cfg.egoistic is set the whole draw is
// rejected until is_egoistic holds. Throws RejectionBudgetExhausted once
// max_attempts_per_trial draws failed the constraint.
GameInstance sample_instance(const SamplerConfig& cfg, std::size_t trial_index);

struct TrialRecord {
  std::size_t trial_index = 0;
  bool has_pne = false;
  std::optional<double> poa;  // absent when no PNE or unbounded
  bool poa_unbounded = false;
  double optimal_su = 0.0;
  std::optional<double> worst_pne_su;
};

struct ExtremalInstance {
  std::size_t trial_index = 0;
  GameInstance instance;
  std::vector<GameState> pne;
  GameState optimal;
  std::optional<double> poa;
  bool poa_unbounded = false;
};

struct CampaignReport {
  SamplerConfig config;  // echoes the seed
  std::size_t trials = 0;
  std::size_t pne_found = 0;
  double pne_found_fraction = 0.0;
  std::optional<double> max_poa;  // over trials with a PNE
  bool max_poa_unbounded = false;
  std::vector<TrialRecord> trial_rows;              // one per trial, in order
  std::vector<ExtremalInstance> no_pne_instances;   // first extremal_cap hits
  std::vector<ExtremalInstance> top_poa_instances;  // largest PoA first
};

// A sampled instance contradicted a proved statement; this signals an
// implementation bug, not a finding. Carries the offending instance.
class TheoremViolation : public std::runtime_error {
 public:
  TheoremViolation(std::string what, std::size_t trial, std::string instance_json)
      : std::runtime_error(std::move(what)),
        trial_index(trial),
        instance_json(std::move(instance_json)) {}

  std::size_t trial_index;
  std::string instance_json;
};

// Returns a description of the violated statement, if any. Only strictly
// egoistic campaigns are checked: PNE existence under LinearLink and Softmax,
// and the PoA ceilings 2 (LinearLink), 2 (BradleyTerry, among trials with a
// PNE) and 1+e (Softmax), all with 1e-6 relative slack.
std::optional<std::string> check_proved_theorems(const SamplerConfig& cfg,
                                                 const TrialRecord& trial);

// Samples and analyzes cfg.count instances under cfg.model. Trials run in
// parallel but are aggregated in trial order, so the report is
// schedule-independent. Throws TheoremViolation per check_proved_theorems.
CampaignReport run_campaign(const SamplerConfig& cfg);

std::string report_to_json(const CampaignReport& report, int indent = 2);

// Header plus one row per trial:
//   trial_index,has_pne,poa,optimal_su,worst_pne_su
// Absent values are empty fields; an unbounded PoA is written as "inf".
std::string trials_to_csv(const CampaignReport& report);

}  // namespace election
