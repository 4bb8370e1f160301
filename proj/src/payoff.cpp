#include "election/payoff.hpp"

#include <cstdio>
#include <sstream>

#include "election/odds.hpp"

namespace election {

namespace {

void require_in_range(const GameInstance& inst, GameState s) {
  if (s.i >= inst.m() || s.j >= inst.n()) {
    std::ostringstream os;
    os << "state (" << s.i + 1 << "," << s.j + 1 << ") outside " << inst.m()
       << "x" << inst.n() << " matrix";
    throw GameError(Errc::IndexOutOfRange, os.str());
  }
}

std::string cell_text(const StatePayoff& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f, %.4f", c.a, c.b);
  return buf;
}

}  // namespace

StatePayoff state_payoff(const GameInstance& inst, WinModel model, GameState s) {
  require_in_range(inst, s);
  const CandidateUtilities& ca = inst.party_a[s.i];
  const CandidateUtilities& cb = inst.party_b[s.j];
  const double p = win_probability(model, ca.total(), cb.total(), inst.b);
  StatePayoff out;
  out.p = p;
  out.a = p * ca.own + (1.0 - p) * cb.rival;
  out.b = (1.0 - p) * cb.own + p * ca.rival;
  out.su = out.a + out.b;
  return out;
}

PayoffMatrix::PayoffMatrix(GameInstance inst, WinModel model)
    : inst_(std::move(inst)), model_(model) {
  cells_.reserve(inst_.m() * inst_.n());
  for (std::size_t i = 0; i < inst_.m(); ++i) {
    for (std::size_t j = 0; j < inst_.n(); ++j) {
      cells_.push_back(state_payoff(inst_, model_, {i, j}));
    }
  }
}

const StatePayoff& PayoffMatrix::at(GameState s) const {
  require_in_range(inst_, s);
  return at(s.i, s.j);
}

PayoffMatrix payoff_matrix(const GameInstance& inst, WinModel model) {
  return PayoffMatrix(inst, model);
}

double social_welfare(const PayoffMatrix& mat, GameState s) {
  return mat.at(s).su;
}

std::string render_text(const PayoffMatrix& mat) {
  const std::size_t m = mat.rows(), n = mat.cols();
  std::vector<std::size_t> width(n, 0);
  std::vector<std::vector<std::string>> cells(m, std::vector<std::string>(n));
  for (std::size_t j = 0; j < n; ++j) {
    width[j] = 1 + std::to_string(j + 1).size();  // header "Bj"
    for (std::size_t i = 0; i < m; ++i) {
      cells[i][j] = cell_text(mat.at(i, j));
      width[j] = std::max(width[j], cells[i][j].size());
    }
  }
  std::size_t label = 1 + std::to_string(m).size();
  std::ostringstream os;
  os << std::string(label, ' ');
  for (std::size_t j = 0; j < n; ++j) {
    std::string head = "B" + std::to_string(j + 1);
    os << "  " << head << std::string(width[j] - head.size(), ' ');
  }
  os << "\n";
  for (std::size_t i = 0; i < m; ++i) {
    std::string head = "A" + std::to_string(i + 1);
    os << head << std::string(label - head.size(), ' ');
    for (std::size_t j = 0; j < n; ++j) {
      os << "  " << cells[i][j] << std::string(width[j] - cells[i][j].size(), ' ');
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace election
