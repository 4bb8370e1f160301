#include "election/odds.hpp"

#include <cmath>
#include <sstream>

namespace election {

double win_probability(WinModel model, double u_a, double u_b, double b) {
  if (!(b >= 1.0) || !(u_a >= 0.0) || !(u_a <= b) || !(u_b >= 0.0) || !(u_b <= b)) {
    std::ostringstream os;
    os << "win_probability requires 0 <= u_a, u_b <= b and b >= 1; got u_a=" << u_a
       << " u_b=" << u_b << " b=" << b;
    throw GameError(Errc::InvalidInput, os.str());
  }
  switch (model) {
    case WinModel::LinearLink:
      return (1.0 + (u_a - u_b) / b) / 2.0;
    case WinModel::BradleyTerry: {
      const double sum = u_a + u_b;
      if (sum == 0.0) return 0.5;  // continuity along u_a == u_b
      return u_a / sum;
    }
    case WinModel::Softmax: {
      const double ea = std::exp(u_a / b);
      const double eb = std::exp(u_b / b);
      return ea / (ea + eb);
    }
  }
  return 0.5;  // unreachable
}

}  // namespace election
