#include "toda/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace toda {

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw std::domain_error("cannot convert non-finite double to rational");
  // mpq_set_d is exact for finite doubles.
  return Rational(x);
}

}  // namespace toda
