#pragma once

#include <random>

#include "election/model.hpp"

namespace test_util {

// Reference instances used across the test suites. table1_left carries the
// corrected trailing column-player candidate (9, 20); see the bundled case
// notes.
inline election::GameInstance table1_left() {
  return election::validate_instance(
      {100.0, {{91, 0}, {90, 8}}, {{11, 1}, {9, 20}}});
}

inline election::GameInstance table4() {
  return election::validate_instance(
      {100.0, {{50, 10}, {5, 20}}, {{10, 90}, {5, 20}}});
}

inline election::GameInstance table2(double eps = 1.0, double delta = 0.01,
                                     double b = 100.0) {
  return election::validate_instance({b,
                                      {{eps, 0}, {eps - delta, eps - delta}},
                                      {{eps, 0}, {eps - delta, eps - delta}}});
}

inline election::GameInstance table5(double eps, double b = 100.0) {
  return election::validate_instance({b, {{eps, 0}, {0, b}}, {{eps, 0}, {0, b}}});
}

inline election::CandidateUtilities draw_candidate(std::mt19937_64& gen, double b) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (true) {
    election::CandidateUtilities c{unit(gen) * b, unit(gen) * b};
    if (c.total() <= b) return c;
  }
}

inline election::GameInstance random_instance(std::mt19937_64& gen, std::size_t m,
                                              std::size_t n, double b) {
  election::RawInstance raw;
  raw.b = b;
  for (std::size_t i = 0; i < m; ++i) raw.party_a.push_back(draw_candidate(gen, b));
  for (std::size_t j = 0; j < n; ++j) raw.party_b.push_back(draw_candidate(gen, b));
  return election::canonicalize(raw);
}

inline election::GameInstance random_egoistic(std::mt19937_64& gen, std::size_t m,
                                              std::size_t n, double b) {
  while (true) {
    election::GameInstance inst = random_instance(gen, m, n, b);
    if (election::is_egoistic(inst, election::EgoismMode::Strict)) return inst;
  }
}

}  // namespace test_util
