#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <optional>
#include <vector>

namespace election {

// Comparison tolerance used wherever derived quantities are compared.
inline constexpr double kDefaultTol = 1e-9;

enum class WinModel { LinearLink, BradleyTerry, Softmax };
enum class EgoismMode { Strict, Weak };
enum class Party { A, B };

std::string_view to_string(WinModel model);
std::optional<WinModel> win_model_from_string(std::string_view name);

enum class Errc {
  BoundViolation,
  NotSorted,
  TooFewCandidates,
  SymmetryViolation,
  IndexOutOfRange,
  NotTwoByTwo,
  RejectionBudgetExhausted,
  UnknownCase,
  InvalidInput,
};

class GameError : public std::runtime_error {
 public:
  GameError(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// One candidate's utility for its own party's supporters and for the
// competing party's supporters. Both are nonnegative and own + rival must
// stay within the enclosing instance's bound b.
struct CandidateUtilities {
  double own = 0.0;
  double rival = 0.0;

  double total() const { return own + rival; }
  bool operator==(const CandidateUtilities&) const = default;
};

// Unvalidated instance description, e.g. as read from a JSON file.
struct RawInstance {
  double b = 1.0;
  std::vector<CandidateUtilities> party_a;
  std::vector<CandidateUtilities> party_b;
};

// Validated two-party game. Invariants (enforced by validate_instance):
//   - both parties have at least two candidates,
//   - candidates are sorted by own-utility, nonincreasing,
//   - party_a[0].own >= party_b[0].own,
//   - every candidate's total utility lies in [0, b], with b >= 1.
// Immutable by convention after validation; all operations on it are pure.
struct GameInstance {
  double b = 1.0;
  std::vector<CandidateUtilities> party_a;
  std::vector<CandidateUtilities> party_b;

  std::size_t m() const { return party_a.size(); }
  std::size_t n() const { return party_b.size(); }
  const std::vector<CandidateUtilities>& side(Party p) const {
    return p == Party::A ? party_a : party_b;
  }
  double total_a(std::size_t i) const { return party_a[i].total(); }
  double total_b(std::size_t j) const { return party_b[j].total(); }
  bool operator==(const GameInstance&) const = default;
};

// Checks every invariant and returns the instance unchanged.
// Throws GameError with BoundViolation, NotSorted, TooFewCandidates or
// SymmetryViolation.
GameInstance validate_instance(const RawInstance& raw);

// Stable-sorts each party by own-utility nonincreasing (ties keep input
// order), then swaps the party labels if party_a[0].own < party_b[0].own.
// The result always passes validate_instance. Throws BoundViolation or
// TooFewCandidates.
GameInstance canonicalize(const RawInstance& raw);

// Strict mode: every A-candidate benefits A's supporters strictly more than
// any B-candidate does, and vice versa. Weak mode uses >= instead of >.
bool is_egoistic(const GameInstance& inst, EgoismMode mode);

// Swaps the two parties' roles. The result may violate the symmetry-breaking
// invariant (party_a[0].own >= party_b[0].own); payoff computations do not
// depend on it.
GameInstance swap_parties(const GameInstance& inst);

// Instance file format:
//   { "b": <number>, "party_a": [{"own": <number>, "rival": <number>}, ...],
//     "party_b": [...] }
// Unknown keys are rejected, as are non-finite numbers. Throws
// GameError(InvalidInput) on any malformed input.
RawInstance parse_instance_json(const std::string& text);
std::string instance_to_json(const GameInstance& inst, int indent = 2);

}  // namespace election
