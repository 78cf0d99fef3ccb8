#pragma once

#include "symflux/symbol.hpp"

#include <string>
#include <utility>
#include <vector>

namespace symflux {

// Product of symbol powers, kept as factors sorted by symbol with no zero
// exponents.  Exponents may be negative (Laurent); which symbols may actually
// carry negative exponents is policed by Expr.
class Monomial {
 public:
  Monomial() = default;

  static Monomial of(Symbol s, int exp = 1) {
    Monomial m;
    m.push(s, exp);
    return m;
  }

  bool empty() const { return factors_.empty(); }
  const std::vector<std::pair<Symbol, int>>& factors() const { return factors_; }

  int exponent(Symbol s) const {
    for (const auto& [sym, e] : factors_)
      if (sym == s) return e;
    return 0;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [sym, e] : factors_) d += e;
    return d;
  }

  bool contains(Symbol s) const { return exponent(s) != 0; }

  Monomial times(const Monomial& o) const {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < factors_.size() || j < o.factors_.size()) {
      if (j == o.factors_.size() || (i < factors_.size() && factors_[i].first < o.factors_[j].first)) {
        r.factors_.push_back(factors_[i++]);
      } else if (i == factors_.size() || o.factors_[j].first < factors_[i].first) {
        r.factors_.push_back(o.factors_[j++]);
      } else {
        int e = factors_[i].second + o.factors_[j].second;
        if (e != 0) r.factors_.emplace_back(factors_[i].first, e);
        ++i, ++j;
      }
    }
    return r;
  }

  Monomial pow(int k) const {
    Monomial r;
    if (k == 0) return r;
    r.factors_ = factors_;
    for (auto& [sym, e] : r.factors_) e *= k;
    return r;
  }

  Monomial with_exponent(Symbol s, int exp) const {
    Monomial r;
    bool placed = false;
    for (const auto& f : factors_) {
      if (f.first == s) {
        if (exp != 0) r.factors_.emplace_back(s, exp);
        placed = true;
      } else {
        if (!placed && s < f.first) {
          if (exp != 0) r.factors_.emplace_back(s, exp);
          placed = true;
        }
        r.factors_.push_back(f);
      }
    }
    if (!placed && exp != 0) r.factors_.emplace_back(s, exp);
    return r;
  }

  Monomial without(Symbol s) const { return with_exponent(s, 0); }

  bool operator==(const Monomial&) const = default;

  // Graded lexicographic order: lower total degree first; ties broken so that
  // at the first symbol (in canonical symbol order) where exponents differ,
  // the higher exponent sorts earlier.  This makes displays read u^2, u*u_x,
  // u_x^2 in the familiar order.
  static int cmp(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    size_t i = 0, j = 0;
    while (i < a.factors_.size() && j < b.factors_.size()) {
      const auto& [sa, ea] = a.factors_[i];
      const auto& [sb, eb] = b.factors_[j];
      if (sa == sb) {
        if (ea != eb) return ea > eb ? -1 : 1;
        ++i, ++j;
      } else if (sa < sb) {
        return ea > 0 ? -1 : 1;
      } else {
        return eb > 0 ? 1 : -1;
      }
    }
    if (i < a.factors_.size()) return a.factors_[i].second > 0 ? -1 : 1;
    if (j < b.factors_.size()) return b.factors_[j].second > 0 ? 1 : -1;
    return 0;
  }

  std::string str() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& [sym, e] : factors_) {
      if (!s.empty()) s += "*";
      s += sym.name();
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  void push(Symbol s, int e) {
    if (e == 0) return;
    for (auto it = factors_.begin(); it != factors_.end(); ++it) {
      if (s == it->first) {
        it->second += e;
        if (it->second == 0) factors_.erase(it);
        return;
      }
      if (s < it->first) {
        factors_.emplace(it, s, e);
        return;
      }
    }
    factors_.emplace_back(s, e);
  }

  std::vector<std::pair<Symbol, int>> factors_;
};

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::cmp(a, b) < 0; }
};

}  // namespace symflux
