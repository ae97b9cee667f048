#include "besseldelta/numeric.hpp"

#include <cmath>

namespace bdelta {

cplx unit_phase(long double x) noexcept {
  const long double frac = x - std::floor(x);
  const double theta = static_cast<double>(frac * 2.0L * std::numbers::pi_v<long double>);
  return {std::cos(theta), std::sin(theta)};
}

cplx expi(long double theta) noexcept {
  return unit_phase(theta / (2.0L * std::numbers::pi_v<long double>));
}

}  // namespace bdelta
