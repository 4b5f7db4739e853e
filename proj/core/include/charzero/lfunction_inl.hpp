#pragma once

#include <cmath>

#include "charzero/numeric.hpp"

namespace charzero::lfunction {

template <typename Kernel>
double zero_density_tail(double density_c, double q, double t, double t_cover, Kernel&& kernel) {
  // u = t +- t_cover / x, x in (0, 1]; the Jacobian t_cover / x^2 absorbs the decay.
  auto side = [&](double sign) {
    return numeric::gauss_legendre(
        [&](double x) {
          if (x <= 0.0) return 0.0;
          const double d = t_cover / x;
          const double u = t + sign * d;
          return std::log(q * (2.0 + std::abs(u))) * kernel(d) * t_cover / (x * x);
        },
        0.0, 1.0, 40, 4);
  };
  return density_c * (side(1.0) + side(-1.0));
}

}  // namespace charzero::lfunction
