#include "symflux/expr.hpp"

#include <sstream>
#include <stdexcept>

namespace symflux {

Expr Expr::constant(Rat c) {
  Expr e;
  e.add_term(Monomial(), c);
  return e;
}

Expr Expr::term(Rat c, const Monomial& m) {
  Expr e;
  e.add_term(m, c);
  return e;
}

std::optional<std::pair<Rat, Monomial>> Expr::as_single_term() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  return std::make_pair(c, m);
}

Rat Expr::constant_part() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rat(0) : it->second;
}

void Expr::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  for (const auto& [sym, e] : m.factors()) {
    if (e < 0 && sym != sym_h() && sym != sym_tau())
      throw std::domain_error("negative exponent on non-step symbol " + sym.name());
  }
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Expr Expr::operator-() const {
  Expr r;
  r.terms_ = terms_;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Expr& Expr::operator+=(const Expr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Expr& Expr::operator-=(const Expr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, Rat(-c));
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  Expr r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      r.add_term(ma.times(mb), Rat(ca * cb));
    }
  }
  return r;
}

Expr operator*(const Rat& c, const Expr& e) {
  Expr r;
  if (c == 0) return r;
  r.terms_ = e.terms_;
  for (auto& [m, coeff] : r.terms_) coeff *= c;
  return r;
}

Expr Expr::pow(int k) const {
  if (k == 0) return constant(1);
  if (k < 0) {
    auto inv = inverse();
    if (!inv) throw std::domain_error("negative power of a non-invertible expression");
    return inv->pow(-k);
  }
  Expr base = *this, acc = constant(1);
  int n = k;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = (n >>= 1) > 0 ? base * base : base;
  }
  return acc;
}

std::optional<Expr> Expr::inverse() const {
  auto single = as_single_term();
  if (!single) return std::nullopt;
  const auto& [c, m] = *single;
  for (const auto& [sym, e] : m.factors()) {
    (void)e;
    if (sym != sym_h() && sym != sym_tau()) return std::nullopt;
  }
  return term(Rat(1 / c), m.pow(-1));
}

Expr Expr::diff(Symbol v) const {
  if ((v == sym_h() || v == sym_tau()) && min_exponent(v) < 0)
    throw std::domain_error("cannot differentiate by " + v.name() +
                            " while negative powers of it remain");
  Expr r;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    if (e == 0) continue;
    r.add_term(m.with_exponent(v, e - 1), Rat(c * e));
  }
  return r;
}

Expr Expr::total(Axis axis) const {
  Expr r;
  for (const auto& [m, c] : terms_) {
    for (const auto& [sym, e] : m.factors()) {
      if (sym.is_sample())
        throw std::domain_error("total derivative of a grid sample; expand it first");
      if (sym.is_coeff()) continue;
      Monomial reduced = m.with_exponent(sym, e - 1);
      Rat scaled(c * e);
      if (sym.is_base()) {
        switch (sym.base_var()) {
          case BaseVar::X:
            if (axis == Axis::X) r.add_term(reduced, scaled);
            break;
          case BaseVar::T:
            if (axis == Axis::T) r.add_term(reduced, scaled);
            break;
          case BaseVar::U: {
            Symbol j = axis == Axis::X ? Symbol::jet(1, 0) : Symbol::jet(0, 1);
            r.add_term(reduced.times(Monomial::of(j)), scaled);
            break;
          }
          default:
            break;  // nu, h, tau are constants along the grid
        }
      } else {  // jet
        int a = sym.jet_x(), b = sym.jet_t();
        Symbol j = axis == Axis::X ? Symbol::jet(a + 1, b) : Symbol::jet(a, b + 1);
        r.add_term(reduced.times(Monomial::of(j)), scaled);
      }
    }
  }
  return r;
}

Expr Expr::subst(Symbol v, const Expr& replacement) const {
  Expr r;
  std::map<int, Expr> powers;  // replacement^e, memoised per exponent
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(v);
    if (e == 0) {
      r.add_term(m, c);
      continue;
    }
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, replacement.pow(e)).first;
    r += Expr::term(c, m.without(v)) * it->second;
  }
  return r;
}

std::map<Monomial, Expr, MonomialLess> Expr::collect(const std::set<Symbol>& vars) const {
  std::map<Monomial, Expr, MonomialLess> groups;
  for (const auto& [m, c] : terms_) {
    Monomial key, rest;
    key = rest = Monomial();
    for (const auto& [sym, e] : m.factors()) {
      if (vars.count(sym))
        key = key.times(Monomial::of(sym, e));
      else
        rest = rest.times(Monomial::of(sym, e));
    }
    groups[key] += Expr::term(c, rest);
  }
  for (auto it = groups.begin(); it != groups.end();) {
    if (it->second.is_zero())
      it = groups.erase(it);
    else
      ++it;
  }
  return groups;
}

std::set<Symbol> Expr::support() const {
  std::set<Symbol> s;
  for (const auto& [m, c] : terms_) {
    (void)c;
    for (const auto& [sym, e] : m.factors()) {
      (void)e;
      s.insert(sym);
    }
  }
  return s;
}

bool Expr::contains(Symbol s) const {
  for (const auto& [m, c] : terms_) {
    (void)c;
    if (m.contains(s)) return true;
  }
  return false;
}

int Expr::min_exponent(Symbol s) const {
  int lo = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    lo = std::min(lo, m.exponent(s));
  }
  return lo;
}

int Expr::max_jet_order() const {
  int hi = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    for (const auto& [sym, e] : m.factors()) {
      (void)e;
      if (sym.is_jet()) hi = std::max(hi, sym.jet_order());
    }
  }
  return hi;
}

int Expr::max_x_order() const {
  int hi = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    for (const auto& [sym, e] : m.factors()) {
      (void)e;
      if (sym.is_jet() && sym.jet_t() == 0) hi = std::max(hi, sym.jet_x());
    }
  }
  return hi;
}

bool Expr::has_t_jet() const {
  for (const auto& [m, c] : terms_) {
    (void)c;
    for (const auto& [sym, e] : m.factors()) {
      (void)e;
      if (sym.is_jet() && sym.jet_t() > 0) return true;
    }
  }
  return false;
}

std::string Expr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat a = abs(c);
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (m.empty())
      out << rat_str(a);
    else if (a == 1)
      out << m.str();
    else
      out << rat_str(a) << "*" << m.str();
  }
  return out.str();
}

std::map<std::pair<int, int>, Expr> split_by_steps(const Expr& e) {
  std::map<std::pair<int, int>, Expr> parts;
  for (const auto& [m, c] : e.terms()) {
    std::pair<int, int> key{m.exponent(sym_tau()), m.exponent(sym_h())};
    Monomial rest = m.without(sym_tau()).without(sym_h());
    parts[key] += Expr::term(c, rest);
  }
  for (auto it = parts.begin(); it != parts.end();) {
    if (it->second.is_zero())
      it = parts.erase(it);
    else
      ++it;
  }
  return parts;
}

}  // namespace symflux
