#include "election/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "election/payoff.hpp"

namespace election {

namespace {

using nlohmann::json;

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Independent per-trial stream: two mixing rounds decorrelate nearby seeds
// and trial indices, so parallel execution order cannot matter.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(splitmix64(seed) ^ (kGolden * (trial + 1)));
}

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

CandidateUtilities draw_candidate(std::mt19937_64& gen, double b) {
  while (true) {
    const double own = uniform01(gen) * b;
    const double rival = uniform01(gen) * b;
    if (own + rival <= b) return {own, rival};
  }
}

std::string fmt(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

json state_json(GameState s) {
  return json{{"display", {s.i + 1, s.j + 1}}, {"index", {s.i, s.j}}};
}

json extremal_json(const ExtremalInstance& e) {
  json j;
  j["trial_index"] = e.trial_index;
  j["instance"] = json::parse(instance_to_json(e.instance));
  json pne = json::array();
  for (const GameState& s : e.pne) pne.push_back(state_json(s));
  j["pne"] = pne;
  j["optimal"] = state_json(e.optimal);
  if (e.poa_unbounded) {
    j["poa"] = "unbounded";
  } else if (e.poa) {
    j["poa"] = *e.poa;
  } else {
    j["poa"] = nullptr;
  }
  return j;
}

ExtremalInstance make_extremal(const SamplerConfig& cfg, const TrialRecord& row) {
  ExtremalInstance e;
  e.trial_index = row.trial_index;
  e.instance = sample_instance(cfg, row.trial_index);  // regenerate, cheap
  const PayoffMatrix mat = payoff_matrix(e.instance, cfg.model);
  const AnalysisResult res = analyze(mat, cfg.tol);
  e.pne = res.pne.states;
  e.optimal = res.optimal;
  e.poa = res.poa.value;
  e.poa_unbounded = res.poa.unbounded;
  return e;
}

// Orders trials by PoA, unbounded above any value, lower trial index first.
bool poa_greater(const TrialRecord& x, const TrialRecord& y) {
  if (x.poa_unbounded != y.poa_unbounded) return x.poa_unbounded;
  const double xv = x.poa ? *x.poa : -1.0;
  const double yv = y.poa ? *y.poa : -1.0;
  if (xv != yv) return xv > yv;
  return x.trial_index < y.trial_index;
}

}  // namespace

void validate_sampler_config(const SamplerConfig& cfg) {
  std::ostringstream os;
  if (cfg.m < 2 || cfg.n < 2) {
    os << "sampler needs m, n >= 2, got m=" << cfg.m << " n=" << cfg.n;
    throw GameError(Errc::InvalidInput, os.str());
  }
  if (cfg.m * cfg.n > 10'000) {
    os << "m * n must not exceed 10000, got " << cfg.m * cfg.n;
    throw GameError(Errc::InvalidInput, os.str());
  }
  if (!(cfg.b >= 1.0)) {
    os << "sampler needs b >= 1, got " << cfg.b;
    throw GameError(Errc::InvalidInput, os.str());
  }
  if (cfg.count < 1) {
    throw GameError(Errc::InvalidInput, "sampler needs count >= 1");
  }
}

namespace {

// Egoism is invariant under within-party reordering and the party swap, so
// the rejection test can run on the raw draw and skip canonicalization work
// on the (potentially many) rejected attempts.
bool egoistic_raw(const std::vector<CandidateUtilities>& a,
                  const std::vector<CandidateUtilities>& b, EgoismMode mode) {
  double min_own_a = a[0].own, max_rival_a = 0.0;
  for (const auto& c : a) {
    min_own_a = std::min(min_own_a, c.own);
    max_rival_a = std::max(max_rival_a, c.rival);
  }
  double min_own_b = b[0].own, max_rival_b = 0.0;
  for (const auto& c : b) {
    min_own_b = std::min(min_own_b, c.own);
    max_rival_b = std::max(max_rival_b, c.rival);
  }
  if (mode == EgoismMode::Strict) {
    return min_own_a > max_rival_b && min_own_b > max_rival_a;
  }
  return min_own_a >= max_rival_b && min_own_b >= max_rival_a;
}

}  // namespace

GameInstance sample_instance(const SamplerConfig& cfg, std::size_t trial_index) {
  std::mt19937_64 gen(trial_seed(cfg.seed, trial_index));
  std::vector<CandidateUtilities> a(cfg.m), b(cfg.n);
  for (std::size_t attempt = 0; attempt < cfg.max_attempts_per_trial; ++attempt) {
    for (std::size_t i = 0; i < cfg.m; ++i) a[i] = draw_candidate(gen, cfg.b);
    for (std::size_t j = 0; j < cfg.n; ++j) b[j] = draw_candidate(gen, cfg.b);
    if (cfg.egoistic && !egoistic_raw(a, b, *cfg.egoistic)) continue;
    return canonicalize(RawInstance{cfg.b, a, b});
  }
  std::ostringstream os;
  os << "no admissible instance in " << cfg.max_attempts_per_trial
     << " attempts (trial " << trial_index << ", m=" << cfg.m << " n=" << cfg.n
     << " b=" << cfg.b << ")";
  throw GameError(Errc::RejectionBudgetExhausted, os.str());
}

std::optional<std::string> check_proved_theorems(const SamplerConfig& cfg,
                                                 const TrialRecord& trial) {
  if (cfg.egoistic != EgoismMode::Strict) return std::nullopt;
  constexpr double kRelSlack = 1e-6;
  const bool existence_model =
      cfg.model == WinModel::LinearLink || cfg.model == WinModel::Softmax;
  if (existence_model && !trial.has_pne) {
    return "strictly egoistic instance without a PNE under " +
           std::string(to_string(cfg.model));
  }
  if (!trial.has_pne) return std::nullopt;
  const double bound = cfg.model == WinModel::Softmax ? 1.0 + std::exp(1.0) : 2.0;
  if (trial.poa_unbounded || (trial.poa && *trial.poa > bound * (1.0 + kRelSlack))) {
    std::ostringstream os;
    os << "PoA " << (trial.poa_unbounded ? std::string("unbounded") : fmt(*trial.poa))
       << " exceeds the " << fmt(bound) << " ceiling under " << to_string(cfg.model);
    return os.str();
  }
  return std::nullopt;
}

CampaignReport run_campaign(const SamplerConfig& cfg) {
  validate_sampler_config(cfg);
  CampaignReport report;
  report.config = cfg;
  report.trials = cfg.count;
  report.trial_rows.resize(cfg.count);

  unsigned workers = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, cfg.count));

  std::exception_ptr first_error;
  std::size_t first_error_trial = 0;
  std::mutex error_mutex;
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= cfg.count) return;
      try {
        const GameInstance inst = sample_instance(cfg, t);
        const PayoffMatrix mat = payoff_matrix(inst, cfg.model);
        const AnalysisResult res = analyze(mat, cfg.tol);
        TrialRecord& row = report.trial_rows[t];
        row.trial_index = t;
        row.has_pne = !res.pne.empty();
        row.poa = res.poa.value;
        row.poa_unbounded = res.poa.unbounded;
        row.optimal_su = mat.at(res.optimal).su;
        if (res.poa.worst_pne) row.worst_pne_su = mat.at(*res.poa.worst_pne).su;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error || t < first_error_trial) {
          first_error = std::current_exception();
          first_error_trial = t;
        }
        return;
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Deterministic aggregation in trial order.
  for (const TrialRecord& row : report.trial_rows) {
    if (auto violation = check_proved_theorems(cfg, row)) {
      const GameInstance inst = sample_instance(cfg, row.trial_index);
      std::ostringstream os;
      os << "trial " << row.trial_index << ": " << *violation;
      throw TheoremViolation(os.str(), row.trial_index, instance_to_json(inst));
    }
    if (row.has_pne) {
      ++report.pne_found;
      if (row.poa_unbounded) {
        report.max_poa_unbounded = true;
      } else if (!report.max_poa_unbounded && row.poa &&
                 (!report.max_poa || *row.poa > *report.max_poa)) {
        report.max_poa = *row.poa;
      }
    } else if (report.no_pne_instances.size() < cfg.extremal_cap) {
      report.no_pne_instances.push_back(make_extremal(cfg, row));
    }
  }
  report.pne_found_fraction =
      static_cast<double>(report.pne_found) / static_cast<double>(report.trials);

  std::vector<const TrialRecord*> with_pne;
  for (const TrialRecord& row : report.trial_rows) {
    if (row.has_pne && (row.poa || row.poa_unbounded)) with_pne.push_back(&row);
  }
  const std::size_t top = std::min(cfg.extremal_cap, with_pne.size());
  std::partial_sort(with_pne.begin(), with_pne.begin() + top, with_pne.end(),
                    [](const TrialRecord* x, const TrialRecord* y) {
                      return poa_greater(*x, *y);
                    });
  for (std::size_t k = 0; k < top; ++k) {
    report.top_poa_instances.push_back(make_extremal(cfg, *with_pne[k]));
  }
  return report;
}

std::string report_to_json(const CampaignReport& report, int indent) {
  const SamplerConfig& cfg = report.config;
  json j;
  j["config"] = {
      {"model", std::string(to_string(cfg.model))},
      {"m", cfg.m},
      {"n", cfg.n},
      {"b", cfg.b},
      {"egoistic", cfg.egoistic
                       ? json(*cfg.egoistic == EgoismMode::Strict ? "strict" : "weak")
                       : json(nullptr)},
      {"count", cfg.count},
      {"seed", cfg.seed},
      {"tol", cfg.tol},
  };
  j["trials"] = report.trials;
  j["pne_found"] = report.pne_found;
  j["pne_found_fraction"] = report.pne_found_fraction;
  if (report.max_poa_unbounded) {
    j["max_poa"] = "unbounded";
  } else if (report.max_poa) {
    j["max_poa"] = *report.max_poa;
  } else {
    j["max_poa"] = nullptr;
  }
  json no_pne = json::array();
  for (const auto& e : report.no_pne_instances) no_pne.push_back(extremal_json(e));
  json top_poa = json::array();
  for (const auto& e : report.top_poa_instances) top_poa.push_back(extremal_json(e));
  j["extremal"] = {{"no_pne", no_pne}, {"top_poa", top_poa}};
  return j.dump(indent);
}

std::string trials_to_csv(const CampaignReport& report) {
  std::string out = "trial_index,has_pne,poa,optimal_su,worst_pne_su\n";
  for (const TrialRecord& row : report.trial_rows) {
    out += std::to_string(row.trial_index);
    out += row.has_pne ? ",1," : ",0,";
    if (row.poa_unbounded) {
      out += "inf";
    } else if (row.poa) {
      out += fmt(*row.poa);
    }
    out += ',';
    out += fmt(row.optimal_su);
    out += ',';
    if (row.worst_pne_su) out += fmt(*row.worst_pne_su);
    out += '\n';
  }
  return out;
}

}  // namespace election
