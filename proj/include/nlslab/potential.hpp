#pragma once

#include <cmath>
#include <stdexcept>

namespace nlslab {

/// Returns sigma = 1/2 - sqrt(1/4 + a) for the 3d inverse-square coupling a.
/// Throws std::invalid_argument for a <= -1/4 (the operator loses positivity).
inline double sigma_of(double a) {
  if (!(a > -0.25))
    throw std::invalid_argument("coupling a must satisfy a > -1/4");
  return 0.5 - std::sqrt(0.25 + a);
}

/// Inverse-square coupling a together with its derived exponent sigma.
/// sigma < 1/2 always; sigma <= 0 iff a >= 0; the near-origin behaviour of
/// fields in the form domain is u ~ r^{-sigma}.
struct PotentialParam {
  double a;
  double sigma;

  explicit PotentialParam(double a_) : a(a_), sigma(sigma_of(a_)) {}
};

} // namespace nlslab
