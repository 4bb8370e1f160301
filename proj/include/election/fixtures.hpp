#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "election/analysis.hpp"
#include "election/model.hpp"

namespace election {

// Parameters for the symbolic reference cases. Unset fields default to
// eps = b/100 and delta = eps/100.
struct CaseParams {
  double b = 100.0;
  std::optional<double> eps;
  std::optional<double> delta;

  double eps_or_default() const { return eps ? *eps : b / 100.0; }
  double delta_or_default() const { return delta ? *delta : eps_or_default() / 100.0; }
};

struct Tolerance {
  double abs = 0.0;
  double rel = 0.0;

  bool ok(double got, double expected) const;
};

struct ExpectedCell {
  double a = 0.0;
  double b = 0.0;
};

enum class PoaExpectation { None, Value, Unbounded };

// A reference game with its recorded analysis outcome. Every expected number
// is either copied from the source table (2-decimal print, +-0.01) or
// evaluated from the closed form it prints (relative 1e-9).
struct PaperCase {
  std::string id;
  GameInstance instance;
  WinModel model;
  bool egoistic_strict = false;
  bool egoistic_weak = false;
  std::vector<std::vector<ExpectedCell>> matrix;
  Tolerance cell_tol;
  std::vector<GameState> pne;
  GameState optimal;
  PoaExpectation poa_kind = PoaExpectation::None;
  double poa_value = 0.0;
  Tolerance poa_tol;
  std::string notes;
};

const std::vector<std::string>& paper_case_ids();
PaperCase paper_case(const std::string& id, const CaseParams& params = {});  // throws UnknownCase

struct CaseOutcome {
  std::string id;
  bool pass = false;
  std::vector<std::string> diff;  // empty when pass
};

struct VerifyReport {
  std::vector<CaseOutcome> cases;
  std::vector<std::string> warnings;  // e.g. unknown tolerance-override keys

  bool all_pass() const;
};

// Runs the full pipeline on every registered case (or the one selected by
// only_case) and compares against the recorded expectations. Failures are
// data in the outcome list, never exceptions. tol_overrides maps a case id
// to an absolute tolerance replacing the recorded matrix/PoA tolerances;
// unknown ids are ignored with a warning.
VerifyReport verify_all(const std::map<std::string, double>& tol_overrides = {},
                        const std::optional<std::string>& only_case = std::nullopt,
                        const CaseParams& params = {});

}  // namespace election
