#include "doctest.h"

#include <cmath>

#include "election/explorer.hpp"
#include "election/payoff.hpp"

using namespace election;

TEST_CASE("sampler config validation") {
  SamplerConfig cfg;
  CHECK_NOTHROW(validate_sampler_config(cfg));
  cfg.m = 1;
  CHECK_THROWS_AS(validate_sampler_config(cfg), GameError);
  cfg.m = 200;
  cfg.n = 200;
  CHECK_THROWS_AS(validate_sampler_config(cfg), GameError);  // m*n guard
  cfg = SamplerConfig{};
  cfg.b = 0.5;
  CHECK_THROWS_AS(validate_sampler_config(cfg), GameError);
  cfg = SamplerConfig{};
  cfg.count = 0;
  CHECK_THROWS_AS(validate_sampler_config(cfg), GameError);
}

TEST_CASE("sampling is a deterministic function of seed and trial index") {
  SamplerConfig cfg;
  cfg.m = 3;
  cfg.n = 2;
  cfg.count = 50;
  cfg.seed = 42;
  for (std::size_t t = 0; t < cfg.count; ++t) {
    CHECK(sample_instance(cfg, t) == sample_instance(cfg, t));
  }
  SamplerConfig other = cfg;
  other.seed = 43;
  int same = 0;
  for (std::size_t t = 0; t < cfg.count; ++t) {
    if (sample_instance(cfg, t) == sample_instance(other, t)) ++same;
  }
  CHECK(same == 0);
}

TEST_CASE("sampled instances satisfy the requested constraints") {
  SamplerConfig cfg;
  cfg.b = 1.0;
  cfg.count = 100;
  cfg.seed = 7;
  for (std::size_t t = 0; t < cfg.count; ++t) {
    const GameInstance inst = sample_instance(cfg, t);
    CHECK(inst.m() == 2);
    CHECK(inst.n() == 2);
    for (const auto& side : {inst.party_a, inst.party_b}) {
      for (const auto& c : side) {
        CHECK(c.own >= 0.0);
        CHECK(c.rival >= 0.0);
        CHECK(c.total() <= 1.0);
      }
    }
    CHECK_NOTHROW(validate_instance(RawInstance{inst.b, inst.party_a, inst.party_b}));
  }

  cfg.b = 100.0;
  cfg.egoistic = EgoismMode::Strict;
  for (std::size_t t = 0; t < cfg.count; ++t) {
    CHECK(is_egoistic(sample_instance(cfg, t), EgoismMode::Strict));
  }
}

TEST_CASE("an unreachable constraint exhausts the rejection budget") {
  SamplerConfig cfg;
  cfg.m = 5;
  cfg.n = 5;
  cfg.egoistic = EgoismMode::Strict;
  cfg.max_attempts_per_trial = 3;
  try {
    sample_instance(cfg, 0);
    // A lucky hit in 3 attempts is possible in principle; retry a few trials.
    bool threw = false;
    for (std::size_t t = 1; t < 32 && !threw; ++t) {
      try {
        sample_instance(cfg, t);
      } catch (const GameError& e) {
        threw = true;
        CHECK(e.code() == Errc::RejectionBudgetExhausted);
      }
    }
    CHECK(threw);
  } catch (const GameError& e) {
    CHECK(e.code() == Errc::RejectionBudgetExhausted);
  }
}

TEST_CASE("egoistic linear-link campaigns find equilibria everywhere") {
  SamplerConfig cfg;
  cfg.model = WinModel::LinearLink;
  cfg.egoistic = EgoismMode::Strict;
  cfg.count = 1000;
  cfg.seed = 5;
  const CampaignReport report = run_campaign(cfg);
  CHECK(report.trials == 1000);
  CHECK(report.pne_found == 1000);
  CHECK(report.pne_found_fraction == 1.0);
  REQUIRE(report.max_poa.has_value());
  CHECK(*report.max_poa <= 2.0 + 2e-6);
  CHECK(report.no_pne_instances.empty());
  CHECK(report.top_poa_instances.size() == 10);
  // Retained extremal trials re-verify against their recorded analysis.
  for (const auto& e : report.top_poa_instances) {
    const AnalysisResult res = analyze(payoff_matrix(e.instance, cfg.model), cfg.tol);
    CHECK(res.pne.states == e.pne);
    CHECK(res.optimal == e.optimal);
    REQUIRE(res.poa.value.has_value());
    CHECK(*res.poa.value == doctest::Approx(*e.poa).epsilon(1e-12));
    CHECK(*e.poa <= *report.max_poa);
  }
}

TEST_CASE("campaign reports are identical across runs and thread counts") {
  SamplerConfig cfg;
  cfg.model = WinModel::Softmax;
  cfg.count = 400;
  cfg.seed = 42;
  cfg.threads = 1;
  const CampaignReport serial = run_campaign(cfg);
  cfg.threads = 4;
  const CampaignReport parallel = run_campaign(cfg);
  CHECK(trials_to_csv(serial) == trials_to_csv(parallel));
  CHECK(report_to_json(serial) == report_to_json(parallel));
  const CampaignReport again = run_campaign(cfg);
  CHECK(trials_to_csv(parallel) == trials_to_csv(again));
}

TEST_CASE("csv layout has one row per trial") {
  SamplerConfig cfg;
  cfg.count = 3;
  cfg.seed = 1;
  const CampaignReport report = run_campaign(cfg);
  const std::string csv = trials_to_csv(report);
  CHECK(csv.rfind("trial_index,has_pne,poa,optimal_su,worst_pne_su\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("proved-statement checker flags only genuine violations") {
  SamplerConfig cfg;
  cfg.egoistic = EgoismMode::Strict;
  cfg.model = WinModel::LinearLink;

  TrialRecord fine{0, true, 1.7, false, 10.0, 5.0};
  CHECK_FALSE(check_proved_theorems(cfg, fine).has_value());

  TrialRecord missing{1, false, std::nullopt, false, 10.0, std::nullopt};
  CHECK(check_proved_theorems(cfg, missing).has_value());

  TrialRecord excessive{2, true, 2.5, false, 10.0, 4.0};
  CHECK(check_proved_theorems(cfg, excessive).has_value());

  cfg.model = WinModel::BradleyTerry;
  CHECK_FALSE(check_proved_theorems(cfg, missing).has_value());  // existence not proved
  CHECK(check_proved_theorems(cfg, excessive).has_value());      // ceiling still 2

  cfg.model = WinModel::Softmax;
  TrialRecord softmax_ok{3, true, 1.0 + std::exp(1.0), false, 10.0, 3.0};
  CHECK_FALSE(check_proved_theorems(cfg, softmax_ok).has_value());

  cfg.egoistic = std::nullopt;  // nothing is proved without egoism
  CHECK_FALSE(check_proved_theorems(cfg, missing).has_value());
  CHECK_FALSE(check_proved_theorems(cfg, excessive).has_value());
}

TEST_CASE("non-egoistic campaigns may lack equilibria without aborting") {
  SamplerConfig cfg;
  cfg.model = WinModel::LinearLink;
  cfg.count = 2000;
  cfg.seed = 11;
  const CampaignReport report = run_campaign(cfg);
  CHECK(report.pne_found <= report.trials);
  CHECK(report.pne_found_fraction ==
        static_cast<double>(report.pne_found) / report.trials);
  for (const auto& e : report.no_pne_instances) {
    CHECK(enumerate_pne(payoff_matrix(e.instance, cfg.model), cfg.tol).empty());
  }
}
