#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "election/model.hpp"

namespace election {

// A strategy pair: A plays candidate i, B plays candidate j. Indices are
// 0-based in the library; human-facing output converts to 1-based.
struct GameState {
  std::size_t i = 0;
  std::size_t j = 0;

  auto operator<=>(const GameState&) const = default;
};

// Expected per-party payoffs of one state. su == a + b.
struct StatePayoff {
  double a = 0.0;   // party A's expected utility
  double b = 0.0;   // party B's expected utility
  double p = 0.0;   // probability that A's candidate wins
  double su = 0.0;  // social welfare of the state
};

// Eagerly computed m x n payoff table. Immutable after construction; reads
// are safe from any number of threads.
class PayoffMatrix {
 public:
  PayoffMatrix(GameInstance inst, WinModel model);

  const GameInstance& instance() const { return inst_; }
  WinModel model() const { return model_; }
  std::size_t rows() const { return inst_.m(); }
  std::size_t cols() const { return inst_.n(); }
  bool in_range(GameState s) const { return s.i < rows() && s.j < cols(); }

  const StatePayoff& at(std::size_t i, std::size_t j) const {
    return cells_[i * cols() + j];
  }
  const StatePayoff& at(GameState s) const;  // throws IndexOutOfRange

 private:
  GameInstance inst_;
  WinModel model_;
  std::vector<StatePayoff> cells_;
};

StatePayoff state_payoff(const GameInstance& inst, WinModel model, GameState s);
PayoffMatrix payoff_matrix(const GameInstance& inst, WinModel model);
double social_welfare(const PayoffMatrix& mat, GameState s);

// Rows are A's strategies, columns B's, every cell "a, b" at 4 decimals.
std::string render_text(const PayoffMatrix& mat);

}  // namespace election
