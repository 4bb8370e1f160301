#pragma once

#include "election/model.hpp"

namespace election {

// Probability that the A-side candidate with total utility u_a beats the
// B-side candidate with total utility u_b:
//
//   LinearLink:   (1 + (u_a - u_b)/b) / 2
//   BradleyTerry: u_a / (u_a + u_b)          (1/2 at u_a = u_b = 0)
//   Softmax:      e^{u_a/b} / (e^{u_a/b} + e^{u_b/b})
//
// Preconditions 0 <= u_a <= b, 0 <= u_b <= b, b >= 1 are enforced; no
// clamping is applied, out-of-range inputs throw GameError(InvalidInput).
double win_probability(WinModel model, double u_a, double u_b, double b);

}  // namespace election
