#pragma once

#include "symflux/infinitesimal.hpp"

#include <string>
#include <utility>
#include <vector>

namespace symflux {

enum class FlowKind {
  Affine,         // closed form computed
  NonAffine,      // some component has degree > 1
  NonTriangular,  // affine but with a dependency cycle between variables
};

// One-parameter group generated by an infinitesimal whose components are
// affine in (x, t, u, h, tau, nu).  Images are exact exponential-polynomials
// in the group parameter a, rendered deterministically.
struct FlowResult {
  FlowKind kind = FlowKind::Affine;
  std::vector<std::pair<Symbol, std::string>> images;  // (x,t,u,h,tau,nu) order
};

FlowResult affine_flow(const InfinitesimalSet& inf);

}  // namespace symflux
