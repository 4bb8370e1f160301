#include "election/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace election {

namespace {

using nlohmann::json;

std::string describe(const CandidateUtilities& c) {
  std::ostringstream os;
  os << "(own=" << c.own << ", rival=" << c.rival << ")";
  return os.str();
}

void check_bounds(const RawInstance& raw) {
  if (!(raw.b >= 1.0)) {
    std::ostringstream os;
    os << "utility bound b must be >= 1, got " << raw.b;
    throw GameError(Errc::BoundViolation, os.str());
  }
  for (Party p : {Party::A, Party::B}) {
    const auto& side = p == Party::A ? raw.party_a : raw.party_b;
    const char* name = p == Party::A ? "party_a" : "party_b";
    for (std::size_t k = 0; k < side.size(); ++k) {
      const auto& c = side[k];
      if (!std::isfinite(c.own) || !std::isfinite(c.rival) || c.own < 0.0 ||
          c.rival < 0.0 || c.total() > raw.b) {
        std::ostringstream os;
        os << name << "[" << k << "] = " << describe(c)
           << " violates 0 <= own, rival and own + rival <= b = " << raw.b;
        throw GameError(Errc::BoundViolation, os.str());
      }
    }
  }
}

void check_sizes(const RawInstance& raw) {
  if (raw.party_a.size() < 2 || raw.party_b.size() < 2) {
    std::ostringstream os;
    os << "each party needs at least two candidates, got m=" << raw.party_a.size()
       << " n=" << raw.party_b.size();
    throw GameError(Errc::TooFewCandidates, os.str());
  }
}

bool sorted_by_own(const std::vector<CandidateUtilities>& side) {
  return std::is_sorted(side.begin(), side.end(),
                        [](const auto& x, const auto& y) { return x.own > y.own; });
}

double read_number(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw GameError(Errc::InvalidInput, where + " must be a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw GameError(Errc::InvalidInput, where + " must be finite");
  }
  return v;
}

std::vector<CandidateUtilities> read_party(const json& j, const std::string& name) {
  if (!j.is_array()) {
    throw GameError(Errc::InvalidInput, name + " must be an array");
  }
  std::vector<CandidateUtilities> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    const json& cand = j[k];
    const std::string where = name + "[" + std::to_string(k) + "]";
    if (!cand.is_object()) {
      throw GameError(Errc::InvalidInput, where + " must be an object");
    }
    for (const auto& item : cand.items()) {
      if (item.key() != "own" && item.key() != "rival") {
        throw GameError(Errc::InvalidInput, where + " has unknown key \"" + item.key() + "\"");
      }
    }
    if (!cand.contains("own") || !cand.contains("rival")) {
      throw GameError(Errc::InvalidInput, where + " needs both \"own\" and \"rival\"");
    }
    out.push_back({read_number(cand["own"], where + ".own"),
                   read_number(cand["rival"], where + ".rival")});
  }
  return out;
}

}  // namespace

std::string_view to_string(WinModel model) {
  switch (model) {
    case WinModel::LinearLink: return "linear_link";
    case WinModel::BradleyTerry: return "bradley_terry";
    case WinModel::Softmax: return "softmax";
  }
  return "unknown";
}

std::optional<WinModel> win_model_from_string(std::string_view name) {
  if (name == "linear_link") return WinModel::LinearLink;
  if (name == "bradley_terry") return WinModel::BradleyTerry;
  if (name == "softmax") return WinModel::Softmax;
  return std::nullopt;
}

GameInstance validate_instance(const RawInstance& raw) {
  check_sizes(raw);
  check_bounds(raw);
  if (!sorted_by_own(raw.party_a) || !sorted_by_own(raw.party_b)) {
    throw GameError(Errc::NotSorted,
                    "candidates must be sorted by own-utility, nonincreasing");
  }
  if (raw.party_a[0].own < raw.party_b[0].own) {
    std::ostringstream os;
    os << "party_a's top own-utility " << raw.party_a[0].own
       << " must be >= party_b's " << raw.party_b[0].own;
    throw GameError(Errc::SymmetryViolation, os.str());
  }
  return GameInstance{raw.b, raw.party_a, raw.party_b};
}

GameInstance canonicalize(const RawInstance& raw) {
  check_sizes(raw);
  check_bounds(raw);
  GameInstance inst{raw.b, raw.party_a, raw.party_b};
  auto by_own_desc = [](const auto& x, const auto& y) { return x.own > y.own; };
  std::stable_sort(inst.party_a.begin(), inst.party_a.end(), by_own_desc);
  std::stable_sort(inst.party_b.begin(), inst.party_b.end(), by_own_desc);
  if (inst.party_a[0].own < inst.party_b[0].own) {
    std::swap(inst.party_a, inst.party_b);
  }
  return inst;
}

bool is_egoistic(const GameInstance& inst, EgoismMode mode) {
  double min_own_a = inst.party_a[0].own, max_rival_a = 0.0;
  for (const auto& c : inst.party_a) {
    min_own_a = std::min(min_own_a, c.own);
    max_rival_a = std::max(max_rival_a, c.rival);
  }
  double min_own_b = inst.party_b[0].own, max_rival_b = 0.0;
  for (const auto& c : inst.party_b) {
    min_own_b = std::min(min_own_b, c.own);
    max_rival_b = std::max(max_rival_b, c.rival);
  }
  if (mode == EgoismMode::Strict) {
    return min_own_a > max_rival_b && min_own_b > max_rival_a;
  }
  return min_own_a >= max_rival_b && min_own_b >= max_rival_a;
}

GameInstance swap_parties(const GameInstance& inst) {
  return GameInstance{inst.b, inst.party_b, inst.party_a};
}

RawInstance parse_instance_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw GameError(Errc::InvalidInput, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw GameError(Errc::InvalidInput, "instance file must be a JSON object");
  }
  for (const auto& item : j.items()) {
    if (item.key() != "b" && item.key() != "party_a" && item.key() != "party_b") {
      throw GameError(Errc::InvalidInput, "unknown key \"" + item.key() + "\"");
    }
  }
  if (!j.contains("b") || !j.contains("party_a") || !j.contains("party_b")) {
    throw GameError(Errc::InvalidInput,
                    "instance needs keys \"b\", \"party_a\" and \"party_b\"");
  }
  RawInstance raw;
  raw.b = read_number(j["b"], "b");
  raw.party_a = read_party(j["party_a"], "party_a");
  raw.party_b = read_party(j["party_b"], "party_b");
  return raw;
}

std::string instance_to_json(const GameInstance& inst, int indent) {
  json j;
  j["b"] = inst.b;
  for (const auto& c : inst.party_a) {
    j["party_a"].push_back({{"own", c.own}, {"rival", c.rival}});
  }
  for (const auto& c : inst.party_b) {
    j["party_b"].push_back({{"own", c.own}, {"rival", c.rival}});
  }
  return j.dump(indent);
}

}  // namespace election
