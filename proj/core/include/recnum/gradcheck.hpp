// gradcheck.hpp — numerical validation of the REINFORCE surrogate gradients
// on a deliberately tiny policy pair, by central finite differences.

#ifndef RECNUM_GRADCHECK_HPP
#define RECNUM_GRADCHECK_HPP

#include <cstdint>

namespace recnum {

struct GradCheckResult {
  double speaker_rel_error = 0.0;   // ||analytic - fd|| / ||fd||
  double listener_rel_error = 0.0;
  bool passed(double tolerance = 1e-4) const {
    return speaker_rel_error < tolerance && listener_rel_error < tolerance;
  }
};

// Hidden size 4, alphabet 6, numerals 1..4: builds one mixed-reward batch and
// compares reinforce_gradients against finite differences of the surrogate
// losses parameter by parameter.
GradCheckResult gradient_check(std::uint64_t seed, double fd_step = 1e-5);

}  // namespace recnum

#endif  // RECNUM_GRADCHECK_HPP
