// Command-line front end: analyze instance files, reproduce the bundled
// reference cases, run sampling campaigns, export cases.
//
// Exit codes: 0 success, 1 input/domain error, 2 verification mismatch,
// 3 proved-statement violation (bug sentinel), 64 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "election/analysis.hpp"
#include "election/explorer.hpp"
#include "election/fixtures.hpp"
#include "election/model.hpp"
#include "election/payoff.hpp"

namespace {

using nlohmann::json;
using namespace election;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitTheorem = 3;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double default_tolerance() {
  if (const char* env = std::getenv("ELECTION_GAME_TOL")) {
    try {
      std::size_t used = 0;
      const double v = std::stod(env, &used);
      if (used != std::string(env).size() || !(v >= 0.0)) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw UsageError(std::string("ELECTION_GAME_TOL is not a nonnegative number: ") + env);
    }
  }
  return kDefaultTol;
}

WinModel parse_model(const std::string& name) {
  if (auto m = win_model_from_string(name)) return *m;
  throw UsageError("unknown model \"" + name + "\" (linear_link, bradley_terry, softmax)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GameError(Errc::InvalidInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GameError(Errc::InvalidInput, "cannot write " + path);
  out << content;
}

std::string state_text(GameState s) {
  return "(" + std::to_string(s.i + 1) + "," + std::to_string(s.j + 1) + ")";
}

json state_json(GameState s) {
  return json{{"display", {s.i + 1, s.j + 1}}, {"index", {s.i, s.j}}};
}

const char* outcome_name(WalkOutcome o) {
  switch (o) {
    case WalkOutcome::ReachedPne: return "reached_pne";
    case WalkOutcome::CycleDetected: return "cycle_detected";
    case WalkOutcome::StepLimit: return "step_limit";
  }
  return "unknown";
}

struct AnalyzeOptions {
  std::string input;
  std::string model_name;
  std::string format = "text";
  double tol = kDefaultTol;
  bool canonicalize_input = false;
  std::string walk_start;  // "i,j", 1-based
};

GameState parse_walk_start(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--walk expects \"i,j\"");
  try {
    const long i = std::stol(text.substr(0, comma));
    const long j = std::stol(text.substr(comma + 1));
    if (i < 1 || j < 1) throw UsageError("--walk indices are 1-based");
    return GameState{static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)};
  } catch (const std::logic_error&) {
    throw UsageError("--walk expects \"i,j\" with integer indices");
  }
}

int cmd_analyze(const AnalyzeOptions& opt) {
  const WinModel model = parse_model(opt.model_name);
  const RawInstance raw = parse_instance_json(read_file(opt.input));
  const GameInstance inst =
      opt.canonicalize_input ? canonicalize(raw) : validate_instance(raw);
  if (inst.m() * inst.n() > 10'000) {
    throw GameError(Errc::InvalidInput, "instance exceeds the 10^4-state guard");
  }

  const PayoffMatrix mat = payoff_matrix(inst, model);
  const AnalysisResult res = analyze(mat, opt.tol);
  std::optional<Walk> walk;
  if (!opt.walk_start.empty()) {
    walk = best_response_walk(mat, parse_walk_start(opt.walk_start), opt.tol);
  }

  if (opt.format == "json") {
    json out;
    out["model"] = std::string(to_string(model));
    out["egoistic_strict"] = is_egoistic(inst, EgoismMode::Strict);
    out["egoistic_weak"] = is_egoistic(inst, EgoismMode::Weak);
    json rows = json::array();
    for (std::size_t i = 0; i < mat.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < mat.cols(); ++j) {
        const StatePayoff& c = mat.at(i, j);
        row.push_back({{"a", c.a}, {"b", c.b}, {"p", c.p}, {"su", c.su}});
      }
      rows.push_back(row);
    }
    out["matrix"] = rows;
    json pne = json::array();
    for (const GameState& s : res.pne.states) pne.push_back(state_json(s));
    out["pne"] = pne;
    out["optimal"] = state_json(res.optimal);
    json poa;
    poa["unbounded"] = res.poa.unbounded;
    poa["value"] = res.poa.value ? json(*res.poa.value) : json(nullptr);
    poa["worst_pne"] = res.poa.worst_pne ? state_json(*res.poa.worst_pne) : json(nullptr);
    out["poa"] = poa;
    if (walk) {
      json w;
      w["outcome"] = outcome_name(walk->outcome);
      json path = json::array();
      for (const GameState& s : walk->path) path.push_back(state_json(s));
      w["path"] = path;
      w["loop_start"] = walk->outcome == WalkOutcome::CycleDetected
                            ? json(walk->loop_start)
                            : json(nullptr);
      out["walk"] = w;
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }

  std::cout << "instance: m=" << inst.m() << " n=" << inst.n() << " b=" << inst.b
            << "\n";
  std::cout << "model: " << to_string(model) << "\n";
  if (model == WinModel::BradleyTerry) {
    bool degenerate = false;
    for (std::size_t i = 0; i < inst.m(); ++i) {
      for (std::size_t j = 0; j < inst.n(); ++j) {
        if (inst.total_a(i) == 0.0 && inst.total_b(j) == 0.0) degenerate = true;
      }
    }
    if (degenerate) {
      std::cout << "note: zero-total matchups evaluated with odds 1/2\n";
    }
  }
  std::cout << "egoistic: strict=" << (is_egoistic(inst, EgoismMode::Strict) ? "yes" : "no")
            << " weak=" << (is_egoistic(inst, EgoismMode::Weak) ? "yes" : "no") << "\n";
  for (Party party : {Party::A, Party::B}) {
    const auto& side = inst.side(party);
    for (std::size_t i = 0; i < side.size(); ++i) {
      for (std::size_t i2 = 0; i2 < side.size(); ++i2) {
        if (weakly_dominates(inst, party, i, i2)) {
          std::cout << "dominance: " << (party == Party::A ? "A" : "B") << i + 1
                    << (dominates(inst, party, i, i2) ? " dominates " : " weakly dominates ")
                    << (party == Party::A ? "A" : "B") << i2 + 1 << "\n";
        }
      }
    }
  }
  std::cout << "payoff matrix:\n" << render_text(mat);
  if (res.pne.empty()) {
    std::cout << "PNE: none\n";
  } else {
    std::cout << "PNE:";
    for (const GameState& s : res.pne.states) std::cout << " " << state_text(s);
    std::cout << "\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", mat.at(res.optimal).su);
  std::cout << "optimal: " << state_text(res.optimal) << " su=" << buf << "\n";
  if (res.poa.unbounded) {
    std::cout << "PoA: unbounded (worst PNE has zero welfare)\n";
  } else if (res.poa.value) {
    std::snprintf(buf, sizeof buf, "%.4f", *res.poa.value);
    std::cout << "PoA: " << buf << " (worst PNE " << state_text(*res.poa.worst_pne)
              << ")\n";
  } else {
    std::cout << "PoA: none (no PNE)\n";
  }
  if (walk) {
    std::cout << "walk:";
    for (std::size_t k = 0; k < walk->path.size(); ++k) {
      std::cout << (k ? " -> " : " ") << state_text(walk->path[k]);
    }
    switch (walk->outcome) {
      case WalkOutcome::ReachedPne:
        std::cout << " [reached pne]\n";
        break;
      case WalkOutcome::CycleDetected:
        std::cout << " [cycle back to " << state_text(walk->path[walk->loop_start])
                  << "]\n";
        break;
      case WalkOutcome::StepLimit:
        std::cout << " [step limit]\n";
        break;
    }
  }
  return kExitOk;
}

struct VerifyOptions {
  std::string only_case;
  std::vector<std::string> overrides;  // "case=tol"
  double b = 100.0;
  std::optional<double> eps;
  std::optional<double> delta;
};

int cmd_verify_paper(const VerifyOptions& opt) {
  std::map<std::string, double> overrides;
  for (const std::string& text : opt.overrides) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw UsageError("--override expects case=tolerance");
    try {
      overrides[text.substr(0, eq)] = std::stod(text.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw UsageError("--override tolerance is not a number: " + text);
    }
  }
  CaseParams params{opt.b, opt.eps, opt.delta};
  const VerifyReport report = verify_all(
      overrides,
      opt.only_case.empty() ? std::nullopt : std::make_optional(opt.only_case), params);
  for (const std::string& warning : report.warnings) {
    std::cout << "warning: " << warning << "\n";
  }
  for (const CaseOutcome& c : report.cases) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.id << "\n";
    for (const std::string& line : c.diff) std::cout << "    " << line << "\n";
  }
  return report.all_pass() ? kExitOk : kExitMismatch;
}

struct SampleOptions {
  SamplerConfig cfg;
  std::string model_name = "linear_link";
  std::string egoistic_name = "none";
  std::string out_dir = ".";
};

int cmd_sample(SampleOptions& opt) {
  opt.cfg.model = parse_model(opt.model_name);
  if (opt.egoistic_name == "strict") {
    opt.cfg.egoistic = EgoismMode::Strict;
  } else if (opt.egoistic_name == "weak") {
    opt.cfg.egoistic = EgoismMode::Weak;
  } else if (opt.egoistic_name == "none") {
    opt.cfg.egoistic = std::nullopt;
  } else {
    throw UsageError("--egoistic must be strict, weak or none");
  }
  try {
    validate_sampler_config(opt.cfg);
  } catch (const GameError& e) {
    throw UsageError(e.what());
  }

  const CampaignReport report = run_campaign(opt.cfg);
  std::filesystem::create_directories(opt.out_dir);
  const auto dir = std::filesystem::path(opt.out_dir);
  write_file((dir / "report.json").string(), report_to_json(report) + "\n");
  write_file((dir / "trials.csv").string(), trials_to_csv(report));

  std::ostringstream line;
  line << "trials=" << report.trials << " pne_fraction=" << report.pne_found_fraction
       << " max_poa=";
  if (report.max_poa_unbounded) {
    line << "unbounded";
  } else if (report.max_poa) {
    line << *report.max_poa;
  } else {
    line << "none";
  }
  std::cout << line.str() << "\n";
  return kExitOk;
}

struct ExportOptions {
  std::string case_id;
  std::string out_path;  // empty = stdout
  double b = 100.0;
  std::optional<double> eps;
  std::optional<double> delta;
};

int cmd_export_case(const ExportOptions& opt) {
  const PaperCase c = paper_case(opt.case_id, CaseParams{opt.b, opt.eps, opt.delta});
  const std::string text = instance_to_json(c.instance) + "\n";
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    write_file(opt.out_path, text);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-party election game analyzer"};
  app.require_subcommand(1);

  AnalyzeOptions analyze_opt;
  VerifyOptions verify_opt;
  SampleOptions sample_opt;
  ExportOptions export_opt;

  CLI::App* analyze = app.add_subcommand("analyze", "analyze an instance file");
  analyze->add_option("input", analyze_opt.input, "instance JSON file")->required();
  analyze->add_option("--model", analyze_opt.model_name,
                      "winning-odds model: linear_link, bradley_terry, softmax")
      ->required();
  analyze->add_option("--format", analyze_opt.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("--tol", analyze_opt.tol, "comparison tolerance");
  analyze->add_flag("--canonicalize", analyze_opt.canonicalize_input,
                    "sort candidates and apply the party-swap rule instead of rejecting");
  analyze->add_option("--walk", analyze_opt.walk_start,
                      "trace a best-response walk from state \"i,j\" (1-based)");

  CLI::App* verify = app.add_subcommand("verify-paper", "check the bundled reference cases");
  verify->add_option("--case", verify_opt.only_case, "run a single case");
  verify->add_option("--override", verify_opt.overrides,
                     "per-case absolute tolerance, e.g. table1-left=0.05");
  verify->add_option("--b", verify_opt.b, "utility bound for symbolic cases");
  verify->add_option("--eps", verify_opt.eps, "epsilon for symbolic cases");
  verify->add_option("--delta", verify_opt.delta, "delta for symbolic cases");

  CLI::App* sample = app.add_subcommand("sample", "run a sampling campaign");
  sample->add_option("--model", sample_opt.model_name, "winning-odds model");
  sample->add_option("--m", sample_opt.cfg.m, "row-party candidates")->check(CLI::Range(2, 10'000));
  sample->add_option("--n", sample_opt.cfg.n, "column-party candidates")->check(CLI::Range(2, 10'000));
  sample->add_option("--b", sample_opt.cfg.b, "utility bound")->check(CLI::Range(1.0, 1e12));
  sample->add_option("--count", sample_opt.cfg.count, "number of trials")
      ->check(CLI::Range(1, 100'000'000));
  sample->add_option("--seed", sample_opt.cfg.seed, "campaign seed");
  sample->add_option("--egoistic", sample_opt.egoistic_name, "strict, weak or none");
  sample->add_option("--tol", sample_opt.cfg.tol, "comparison tolerance");
  sample->add_option("--threads", sample_opt.cfg.threads, "worker threads (0 = auto)");
  sample->add_option("--out", sample_opt.out_dir, "output directory for report.json and trials.csv");

  CLI::App* exportc = app.add_subcommand("export-case", "write a reference case's instance JSON");
  exportc->add_option("--case", export_opt.case_id, "case id")->required();
  exportc->add_option("--out", export_opt.out_path, "output file (default stdout)");
  exportc->add_option("--b", export_opt.b, "utility bound for symbolic cases");
  exportc->add_option("--eps", export_opt.eps, "epsilon for symbolic cases");
  exportc->add_option("--delta", export_opt.delta, "delta for symbolic cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    const double tol = default_tolerance();
    if (!analyze->count("--tol")) analyze_opt.tol = tol;
    if (!sample->count("--tol")) sample_opt.cfg.tol = tol;
    if (app.got_subcommand(analyze)) return cmd_analyze(analyze_opt);
    if (app.got_subcommand(verify)) return cmd_verify_paper(verify_opt);
    if (app.got_subcommand(sample)) return cmd_sample(sample_opt);
    if (app.got_subcommand(exportc)) return cmd_export_case(export_opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TheoremViolation& e) {
    std::cerr << "proved-statement violation (implementation bug): " << e.what() << "\n"
              << "offending instance:\n"
              << e.instance_json << "\n";
    return kExitTheorem;
  } catch (const GameError& e) {
    if (e.code() == Errc::UnknownCase) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
