#pragma once

#include <cstdint>
#include <string_view>

#include "charzero/numeric.hpp"

namespace charzero {

enum class ZeroMethod { GridNewton, ArgumentPrincipleRefined };

std::string_view to_string(ZeroMethod m);

/// A located nontrivial zero rho = beta + i gamma of L(s, chi).
struct ZeroRecord {
  std::uint64_t q = 0;
  std::uint64_t conrey = 0;
  double beta = 0.0;
  double gamma = 0.0;
  /// |L(beta + i gamma)| at the accepted iterate.
  double residual = 0.0;
  ZeroMethod method = ZeroMethod::GridNewton;

  cplx rho() const { return {beta, gamma}; }
};

}  // namespace charzero
