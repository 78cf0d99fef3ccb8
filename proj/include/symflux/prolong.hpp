#pragma once

#include "symflux/infinitesimal.hpp"
#include "symflux/modeq.hpp"

#include <map>
#include <set>
#include <utility>

namespace symflux {

// Coefficients sigma_(a,b) attached to d/dw_(a,b) in the prolonged operator.
// Entries are produced by the one-step recursion
//   sigma_{J+e} = D_e sigma_J - w_{J+x} D_e xi1 - w_{J+t} D_e xi2
// routed canonically (all x-steps, then t-steps); the recursion commutes, so
// the route is irrelevant -- the property suite checks this.
class ProlongationTable {
 public:
  // Builds every entry of total order <= max_order.
  ProlongationTable(const InfinitesimalSet& inf, int max_order);
  // Builds exactly the entries needed for the given jets (plus ancestors).
  ProlongationTable(const InfinitesimalSet& inf, const std::set<Symbol>& jets);

  const Expr& at(int a, int b) const;
  bool has(int a, int b) const { return sigma_.count({a, b}) != 0; }

 private:
  const Expr& ensure(int a, int b);

  Expr dx_xi1_, dt_xi1_, dx_xi2_, dt_xi2_;
  Expr eta_;
  std::map<std::pair<int, int>, Expr> sigma_;
};

// Applies the prolonged operator
//   xi1 d/dx + xi2 d/dt + eta d/du + zeta1 d/dh + zeta2 d/dtau + chi d/dnu
//     + sum sigma_(a,b) d/dw_(a,b)
// to a jet polynomial.  The table must cover every jet occurring in target.
Expr apply_prolonged(const InfinitesimalSet& inf, const ProlongationTable& sigma,
                     const Expr& target);

// Rewrites jet polynomials modulo the equation da.full() = 0 together with
// all its total derivatives: each t-derivative is replaced by its on-manifold
// value, exactly, leaving pure x-jets.  Requires da.full() to be u_t plus a
// t-derivative-free remainder.
class ManifoldReducer {
 public:
  explicit ManifoldReducer(const DifferentialApproximation& da);
  Expr reduce(const Expr& e) const;

 private:
  const Expr& consequence(int a, int b) const;  // on-manifold w_(a,b), b >= 1

  Expr ut_value_;
  mutable std::map<std::pair<int, int>, Expr> cache_;
};

inline Expr manifold_reduce(const Expr& e, const DifferentialApproximation& da) {
  return ManifoldReducer(da).reduce(e);
}

// Invariance residual of one generator on one differential approximation:
// the prolonged operator applied to da.full(), restricted to the manifold.
// Identically zero exactly when the generator is admitted.
Expr invariance_residual(const InfinitesimalSet& inf, const DifferentialApproximation& da,
                         const ManifoldReducer& reducer);
Expr invariance_residual(const InfinitesimalSet& inf, const DifferentialApproximation& da);

}  // namespace symflux
