#pragma once

#include "symflux/expr.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace symflux {

// Raised for defects of the problem itself: a stencil whose expansion leaves
// negative step powers, a scheme inconsistent with its pde, or a Taylor order
// too small to resolve the truncation error.
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bidegree of an error term in the step sizes: (tau exponent, h exponent).
using Grading = std::pair<int, int>;

// A pde plus the retained truncation-error terms of one scheme, with every
// t-derivative eliminated through the pde: pde_part + error_part = 0 on
// solutions.  pde_part is u_t - rhs; error_part only carries pure
// x-derivatives alongside powers of tau and h.
struct DifferentialApproximation {
  Expr pde_part;
  Expr error_part;
  std::set<Grading> retained;

  Expr full() const { return pde_part + error_part; }
};

// Taylor expansion of one grid sample u(x + p/2*h, t + q*tau) around (x, t),
// keeping all terms of total differentiation order <= order.
Expr shift_expand(Symbol sample, int order);

// Replaces every sample of the stencil by its expansion.  The result is the
// residual as a polynomial in jets (mixed t-derivatives still present), the
// steps and the base variables, normalised so its step-free part is exactly
// u_t - pde_rhs.  Throws AnalysisError when negative step powers survive or
// the step-free part disagrees with the pde.
Expr taylor_form(const Expr& stencil, const Expr& pde_rhs, int order);

// d^k u / dt^k rewritten through x-derivatives alone by differentiating the
// pde u_t = rhs along itself (k >= 1).
Expr pde_time_derivative(const Expr& pde_rhs, int k);

// Eliminates t-derivatives from the graded error terms of a taylor_form and
// keeps exactly the requested gradings.
DifferentialApproximation spatial_form(const Expr& gamma, const Expr& pde_rhs,
                                       const std::set<Grading>& retained);

struct ModifiedEquation {
  DifferentialApproximation da;
  int taylor_order = 0;
  int approximation_order = 0;     // highest x-derivative order present
  std::vector<Grading> leading;    // first level of error gradings, sorted
};

// Full derivation.  When taylor_order is absent an adequate order is chosen
// automatically (raised as needed up to 8).  error_levels selects how many
// layers of leading gradings to retain: level one is the set of minimal
// gradings under componentwise order, level two the minimal ones among the
// rest, and so on.
ModifiedEquation derive_modified_equation(const Expr& stencil, const Expr& pde_rhs,
                                          std::optional<int> taylor_order, int error_levels);

}  // namespace symflux
