#include "election/analysis.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace election {

namespace {

void require_party_index(const GameInstance& inst, Party party, std::size_t idx) {
  const std::size_t size = inst.side(party).size();
  if (idx >= size) {
    std::ostringstream os;
    os << "strategy " << idx + 1 << " outside party "
       << (party == Party::A ? "A" : "B") << " with " << size << " candidates";
    throw GameError(Errc::IndexOutOfRange, os.str());
  }
}

double responder_payoff(const PayoffMatrix& mat, Party responder, std::size_t own,
                        std::size_t opp) {
  return responder == Party::A ? mat.at(own, opp).a : mat.at(opp, own).b;
}

// Lowest index attaining the exact maximum of the responder's payoffs.
std::size_t exact_best_response(const PayoffMatrix& mat, Party responder,
                                std::size_t opp) {
  const std::size_t count = responder == Party::A ? mat.rows() : mat.cols();
  std::size_t best = 0;
  double best_value = responder_payoff(mat, responder, 0, opp);
  for (std::size_t k = 1; k < count; ++k) {
    const double v = responder_payoff(mat, responder, k, opp);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  return best;
}

}  // namespace

bool PneSet::contains(GameState s) const {
  return std::binary_search(states.begin(), states.end(), s);
}

bool weakly_dominates(const GameInstance& inst, Party party, std::size_t i,
                      std::size_t i2) {
  require_party_index(inst, party, i);
  require_party_index(inst, party, i2);
  const auto& side = inst.side(party);
  return i < i2 && side[i].total() >= side[i2].total();
}

bool dominates(const GameInstance& inst, Party party, std::size_t i, std::size_t i2) {
  return weakly_dominates(inst, party, i, i2) &&
         inst.side(party)[i].total() > inst.side(party)[i2].total();
}

std::vector<std::size_t> best_responses(const PayoffMatrix& mat, Party responder,
                                        std::size_t opponent_strategy, double tol) {
  require_party_index(mat.instance(), responder == Party::A ? Party::B : Party::A,
                      opponent_strategy);
  const std::size_t count = responder == Party::A ? mat.rows() : mat.cols();
  double best = responder_payoff(mat, responder, 0, opponent_strategy);
  for (std::size_t k = 1; k < count; ++k) {
    best = std::max(best, responder_payoff(mat, responder, k, opponent_strategy));
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < count; ++k) {
    if (responder_payoff(mat, responder, k, opponent_strategy) >= best - tol) {
      out.push_back(k);
    }
  }
  return out;
}

PneSet enumerate_pne(const PayoffMatrix& mat, double tol) {
  PneSet out;
  out.tol = tol;
  const std::size_t m = mat.rows(), n = mat.cols();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const StatePayoff& cell = mat.at(i, j);
      bool pne = true;
      for (std::size_t i2 = 0; pne && i2 < m; ++i2) {
        if (mat.at(i2, j).a > cell.a + tol) pne = false;
      }
      for (std::size_t j2 = 0; pne && j2 < n; ++j2) {
        if (mat.at(i, j2).b > cell.b + tol) pne = false;
      }
      if (pne) out.states.push_back({i, j});
    }
  }
  return out;
}

DeviationGains deviation_gains(const PayoffMatrix& mat) {
  if (mat.rows() != 2 || mat.cols() != 2) {
    std::ostringstream os;
    os << "deviation gains are defined for 2x2 games, got " << mat.rows() << "x"
       << mat.cols();
    throw GameError(Errc::NotTwoByTwo, os.str());
  }
  DeviationGains g;
  g.d[0] = mat.at(1, 0).a - mat.at(0, 0).a;
  g.d[1] = mat.at(1, 1).b - mat.at(1, 0).b;
  g.d[2] = mat.at(0, 1).a - mat.at(1, 1).a;
  g.d[3] = mat.at(0, 0).b - mat.at(0, 1).b;
  for (int k = 0; k < 4; ++k) g.d_prime[k] = -g.d[k];
  return g;
}

std::size_t default_max_steps(const PayoffMatrix& mat) {
  return 4 * mat.rows() * mat.cols();
}

Walk best_response_walk(const PayoffMatrix& mat, GameState start, double tol,
                        std::size_t max_steps, MoverOrder order) {
  if (!mat.in_range(start)) {
    std::ostringstream os;
    os << "walk start (" << start.i + 1 << "," << start.j + 1 << ") outside "
       << mat.rows() << "x" << mat.cols() << " matrix";
    throw GameError(Errc::IndexOutOfRange, os.str());
  }
  if (max_steps == 0) max_steps = default_max_steps(mat);

  Walk walk;
  walk.path.push_back(start);
  std::map<GameState, std::size_t> seen{{start, 0}};
  GameState cur = start;
  while (true) {
    // Improving move for one party: the exact best response, taken only when
    // it beats the current payoff by more than tol.
    std::optional<GameState> next;
    const Party first = order == MoverOrder::AFirst ? Party::A : Party::B;
    for (Party mover : {first, first == Party::A ? Party::B : Party::A}) {
      if (mover == Party::A) {
        const std::size_t br = exact_best_response(mat, Party::A, cur.j);
        if (mat.at(br, cur.j).a > mat.at(cur).a + tol) {
          next = GameState{br, cur.j};
          break;
        }
      } else {
        const std::size_t br = exact_best_response(mat, Party::B, cur.i);
        if (mat.at(cur.i, br).b > mat.at(cur).b + tol) {
          next = GameState{cur.i, br};
          break;
        }
      }
    }
    if (!next) {
      walk.outcome = WalkOutcome::ReachedPne;
      return walk;
    }
    if (walk.path.size() - 1 >= max_steps) {
      walk.outcome = WalkOutcome::StepLimit;
      return walk;
    }
    if (auto it = seen.find(*next); it != seen.end()) {
      walk.outcome = WalkOutcome::CycleDetected;
      walk.loop_start = it->second;
      return walk;
    }
    walk.path.push_back(*next);
    seen.emplace(*next, walk.path.size() - 1);
    cur = *next;
  }
}

GameState optimal_state(const PayoffMatrix& mat) {
  GameState best{0, 0};
  double best_su = mat.at(0, 0).su;
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      if (mat.at(i, j).su > best_su) {
        best_su = mat.at(i, j).su;
        best = {i, j};
      }
    }
  }
  return best;
}

PoaResult price_of_anarchy(const PayoffMatrix& mat, double tol) {
  PoaResult out;
  out.optimal = optimal_state(mat);
  const PneSet pne = enumerate_pne(mat, tol);
  if (pne.empty()) return out;

  GameState worst = pne.states.front();
  for (const GameState& s : pne.states) {
    if (mat.at(s).su < mat.at(worst).su) worst = s;
  }
  out.worst_pne = worst;
  const double worst_su = mat.at(worst).su;
  if (worst_su <= 0.0) {
    out.unbounded = true;  // zero-welfare equilibrium
    return out;
  }
  out.value = mat.at(out.optimal).su / worst_su;
  return out;
}

AnalysisResult analyze(const PayoffMatrix& mat, double tol) {
  AnalysisResult out;
  out.pne = enumerate_pne(mat, tol);
  out.optimal = optimal_state(mat);
  out.poa = price_of_anarchy(mat, tol);
  return out;
}

}  // namespace election
