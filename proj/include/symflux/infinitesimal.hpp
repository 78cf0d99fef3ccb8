#pragma once

#include "symflux/expr.hpp"

#include <array>
#include <map>
#include <set>
#include <string>

namespace symflux {

// Components of a point-symmetry generator
//   xi1 d/dx + xi2 d/dt + eta d/du + zeta1 d/dh + zeta2 d/dtau + chi d/dnu.
enum class InfSlot { Xi1, Xi2, Eta, Zeta1, Zeta2, Chi };

constexpr std::array<InfSlot, 6> kAllSlots = {InfSlot::Xi1,   InfSlot::Xi2,
                                              InfSlot::Eta,   InfSlot::Zeta1,
                                              InfSlot::Zeta2, InfSlot::Chi};

inline const char* slot_name(InfSlot s) {
  switch (s) {
    case InfSlot::Xi1: return "xi1";
    case InfSlot::Xi2: return "xi2";
    case InfSlot::Eta: return "eta";
    case InfSlot::Zeta1: return "zeta1";
    case InfSlot::Zeta2: return "zeta2";
    case InfSlot::Chi: return "chi";
  }
  return "?";
}

// The variable whose flow the slot generates.
inline Symbol slot_variable(InfSlot s) {
  switch (s) {
    case InfSlot::Xi1: return sym_x();
    case InfSlot::Xi2: return sym_t();
    case InfSlot::Eta: return sym_u();
    case InfSlot::Zeta1: return sym_h();
    case InfSlot::Zeta2: return sym_tau();
    case InfSlot::Chi: return sym_nu();
  }
  throw std::logic_error("unreachable");
}

// Largest dependency set each component may use.  For point symmetries of an
// evolution scheme: xi1(x,t), xi2(t), eta(x,t,u); the step and parameter
// components may feel everything up to their own variable.  Dropping the
// steps (with_steps = false) gives the continuous-equation variant.
inline std::set<Symbol> default_dependencies(InfSlot s, bool with_steps) {
  std::set<Symbol> deps;
  switch (s) {
    case InfSlot::Xi1: deps = {sym_x(), sym_t()}; break;
    case InfSlot::Xi2: deps = {sym_t()}; break;
    case InfSlot::Eta: deps = {sym_x(), sym_t(), sym_u()}; break;
    case InfSlot::Zeta1:
    case InfSlot::Zeta2: deps = {sym_x(), sym_t(), sym_u(), sym_h(), sym_tau()}; break;
    case InfSlot::Chi:
      deps = {sym_x(), sym_t(), sym_u(), sym_h(), sym_tau(), sym_nu()};
      break;
  }
  if (!with_steps) {
    deps.erase(sym_h());
    deps.erase(sym_tau());
  }
  return deps;
}

// A concrete assignment of all six components; expressions may also contain
// ansatz coefficient symbols (treated as scalars).
struct InfinitesimalSet {
  Expr xi1, xi2, eta, zeta1, zeta2, chi;

  Expr& operator[](InfSlot s) {
    switch (s) {
      case InfSlot::Xi1: return xi1;
      case InfSlot::Xi2: return xi2;
      case InfSlot::Eta: return eta;
      case InfSlot::Zeta1: return zeta1;
      case InfSlot::Zeta2: return zeta2;
      case InfSlot::Chi: return chi;
    }
    throw std::logic_error("unreachable");
  }
  const Expr& operator[](InfSlot s) const { return const_cast<InfinitesimalSet*>(this)->operator[](s); }

  bool is_zero() const {
    for (InfSlot s : kAllSlots)
      if (!(*this)[s].is_zero()) return false;
    return true;
  }

  // Each component must be a polynomial in its permitted variables (plus
  // coefficient symbols); jets and samples never belong here.
  void validate() const {
    for (InfSlot s : kAllSlots) {
      const std::set<Symbol> allowed = default_dependencies(s, true);
      for (Symbol sym : (*this)[s].support()) {
        if (sym.is_coeff()) continue;
        if (!allowed.count(sym))
          throw std::domain_error(std::string(slot_name(s)) + " may not depend on " +
                                  sym.name());
      }
    }
  }
};

}  // namespace symflux
