#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "election/payoff.hpp"

namespace election {

// All pure Nash equilibria of a payoff matrix. A state is kept when no
// unilateral deviation improves the mover's payoff by more than tol.
struct PneSet {
  std::vector<GameState> states;  // sorted by (i, j)
  double tol = kDefaultTol;

  bool contains(GameState s) const;
  bool empty() const { return states.empty(); }
};

enum class WalkOutcome { ReachedPne, CycleDetected, StepLimit };
enum class MoverOrder { AFirst, BFirst };

// Best-response walk on the state graph. Consecutive states differ in one
// coordinate and every step improves the mover's payoff by more than tol.
// loop_start indexes the first state of the detected loop within path and is
// meaningful only when outcome == CycleDetected.
struct Walk {
  std::vector<GameState> path;
  WalkOutcome outcome = WalkOutcome::ReachedPne;
  std::size_t loop_start = 0;
};

struct PoaResult {
  GameState optimal;                   // argmax social welfare, lowest (i, j) on ties
  std::optional<GameState> worst_pne;  // absent when no PNE exists
  std::optional<double> value;         // absent when no PNE or unbounded
  bool unbounded = false;              // worst PNE has zero social welfare
};

// The four unilateral deviation gains of a 2x2 game and their reversals:
//   d[0] = a21 - a11, d[1] = b22 - b21, d[2] = a12 - a22, d[3] = b11 - b12,
// d_prime[k] == -d[k] by construction.
struct DeviationGains {
  std::array<double, 4> d{};
  std::array<double, 4> d_prime{};
};

// Definition on total utilities: i weakly dominates i2 iff i < i2 and
// u(X_i) >= u(X_i2); dominates additionally requires u(X_i) > u(X_i2).
bool weakly_dominates(const GameInstance& inst, Party party, std::size_t i,
                      std::size_t i2);
bool dominates(const GameInstance& inst, Party party, std::size_t i,
               std::size_t i2);

// Indices of the responder's best replies to the opponent's fixed strategy;
// payoffs within tol of the maximum are all included.
std::vector<std::size_t> best_responses(const PayoffMatrix& mat, Party responder,
                                        std::size_t opponent_strategy, double tol);

PneSet enumerate_pne(const PayoffMatrix& mat, double tol = kDefaultTol);

DeviationGains deviation_gains(const PayoffMatrix& mat);  // throws NotTwoByTwo

std::size_t default_max_steps(const PayoffMatrix& mat);  // 4 * m * n

// At each state the first party (per order) with a strictly improving best
// response moves to it (lowest index among exact maxima). Terminates on a
// state with no improving deviation, on a revisited state, or at max_steps.
Walk best_response_walk(const PayoffMatrix& mat, GameState start,
                        double tol = kDefaultTol, std::size_t max_steps = 0,
                        MoverOrder order = MoverOrder::AFirst);

GameState optimal_state(const PayoffMatrix& mat);

PoaResult price_of_anarchy(const PayoffMatrix& mat, double tol = kDefaultTol);

struct AnalysisResult {
  PneSet pne;
  GameState optimal;
  PoaResult poa;
};

AnalysisResult analyze(const PayoffMatrix& mat, double tol = kDefaultTol);

}  // namespace election
