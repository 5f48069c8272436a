#include "commexp/tolerance.hpp"

#include <cmath>
#include <stdexcept>

namespace commexp {

void ToleranceConfig::validate() const {
  const double fields[] = {eq_tol, congruence_tol, spectral_tol,
                           interval_margin};
  const char* names[] = {"eq_tol", "congruence_tol", "spectral_tol",
                         "interval_margin"};
  for (int i = 0; i < 4; ++i) {
    if (!(std::isfinite(fields[i]) && fields[i] >= 0.0)) {
      throw std::invalid_argument(std::string(names[i]) +
                                  " must be finite and non-negative");
    }
  }
}

}  // namespace commexp
