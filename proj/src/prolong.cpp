#include "symflux/prolong.hpp"

#include <stdexcept>

namespace symflux {

ProlongationTable::ProlongationTable(const InfinitesimalSet& inf, int max_order)
    : dx_xi1_(inf.xi1.total(Axis::X)),
      dt_xi1_(inf.xi1.total(Axis::T)),
      dx_xi2_(inf.xi2.total(Axis::X)),
      dt_xi2_(inf.xi2.total(Axis::T)),
      eta_(inf.eta) {
  if (max_order < 1) throw std::invalid_argument("prolongation order must be >= 1");
  for (int n = 1; n <= max_order; ++n)
    for (int a = 0; a <= n; ++a) ensure(a, n - a);
}

ProlongationTable::ProlongationTable(const InfinitesimalSet& inf, const std::set<Symbol>& jets)
    : dx_xi1_(inf.xi1.total(Axis::X)),
      dt_xi1_(inf.xi1.total(Axis::T)),
      dx_xi2_(inf.xi2.total(Axis::X)),
      dt_xi2_(inf.xi2.total(Axis::T)),
      eta_(inf.eta) {
  for (Symbol j : jets) {
    if (!j.is_jet()) throw std::invalid_argument("prolongation target must be a jet");
    ensure(j.jet_x(), j.jet_t());
  }
}

const Expr& ProlongationTable::at(int a, int b) const {
  auto it = sigma_.find({a, b});
  if (it == sigma_.end())
    throw std::logic_error("prolongation table lacks sigma_(" + std::to_string(a) + "," +
                           std::to_string(b) + ")");
  return it->second;
}

const Expr& ProlongationTable::ensure(int a, int b) {
  auto it = sigma_.find({a, b});
  if (it != sigma_.end()) return it->second;
  Expr value;
  if (a == 1 && b == 0) {
    value = eta_.total(Axis::X) - Expr::sym(Symbol::jet(1, 0)) * dx_xi1_ -
            Expr::sym(Symbol::jet(0, 1)) * dx_xi2_;
  } else if (a == 0 && b == 1) {
    value = eta_.total(Axis::T) - Expr::sym(Symbol::jet(1, 0)) * dt_xi1_ -
            Expr::sym(Symbol::jet(0, 1)) * dt_xi2_;
  } else if (b == 0) {  // x-step from (a-1, 0)
    value = ensure(a - 1, 0).total(Axis::X) - Expr::sym(Symbol::jet(a, 0)) * dx_xi1_ -
            Expr::sym(Symbol::jet(a - 1, 1)) * dx_xi2_;
  } else {  // t-step from (a, b-1)
    value = ensure(a, b - 1).total(Axis::T) - Expr::sym(Symbol::jet(a + 1, b - 1)) * dt_xi1_ -
            Expr::sym(Symbol::jet(a, b)) * dt_xi2_;
  }
  return sigma_.emplace(std::make_pair(a, b), std::move(value)).first->second;
}

Expr apply_prolonged(const InfinitesimalSet& inf, const ProlongationTable& sigma,
                     const Expr& target) {
  Expr out;
  out += inf.xi1 * target.diff(sym_x());
  out += inf.xi2 * target.diff(sym_t());
  out += inf.eta * target.diff(sym_u());
  out += inf.zeta1 * target.diff(sym_h());
  out += inf.zeta2 * target.diff(sym_tau());
  out += inf.chi * target.diff(sym_nu());
  for (Symbol s : target.support()) {
    if (s.is_sample()) throw std::domain_error("prolonged operator acts on jet polynomials only");
    if (s.is_jet()) out += sigma.at(s.jet_x(), s.jet_t()) * target.diff(s);
  }
  return out;
}

ManifoldReducer::ManifoldReducer(const DifferentialApproximation& da) {
  const Expr full = da.full();
  const Symbol ut = Symbol::jet(0, 1);
  Expr rest = full - Expr::sym(ut);
  if (rest.contains(ut) || rest.has_t_jet())
    throw std::invalid_argument(
        "manifold reduction requires the equation in solved form u_t + (pure-x terms) = 0");
  ut_value_ = -rest;
  cache_.emplace(std::make_pair(0, 1), ut_value_);
}

const Expr& ManifoldReducer::consequence(int a, int b) const {
  auto it = cache_.find({a, b});
  if (it != cache_.end()) return it->second;
  Expr value;
  if (b == 1) {
    // pure x-derivatives of the solved form stay t-free
    value = consequence(a - 1, 1).total(Axis::X);
  } else {
    value = reduce(consequence(a, b - 1).total(Axis::T));
  }
  return cache_.emplace(std::make_pair(a, b), std::move(value)).first->second;
}

Expr ManifoldReducer::reduce(const Expr& e) const {
  Expr out;
  for (const auto& [m, c] : e.terms()) {
    Expr term = Expr::term(c, Monomial());
    for (const auto& [sym, exp] : m.factors()) {
      if (sym.is_jet() && sym.jet_t() > 0)
        term = term * consequence(sym.jet_x(), sym.jet_t()).pow(exp);
      else
        term = term * Expr::term(Rat(1), Monomial::of(sym, exp));
    }
    out += term;
  }
  return out;
}

Expr invariance_residual(const InfinitesimalSet& inf, const DifferentialApproximation& da,
                         const ManifoldReducer& reducer) {
  const Expr target = da.full();
  std::set<Symbol> jets;
  for (Symbol s : target.support())
    if (s.is_jet()) jets.insert(s);
  ProlongationTable sigma(inf, jets);
  return reducer.reduce(apply_prolonged(inf, sigma, target));
}

Expr invariance_residual(const InfinitesimalSet& inf, const DifferentialApproximation& da) {
  ManifoldReducer reducer(da);
  return invariance_residual(inf, da, reducer);
}

}  // namespace symflux
