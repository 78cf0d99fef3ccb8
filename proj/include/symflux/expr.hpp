#pragma once

#include "symflux/monomial.hpp"
#include "symflux/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>

namespace symflux {

// Multivariate polynomial over the rationals in canonical form: a map from
// monomials (graded-lex order) to nonzero coefficients.  Negative exponents
// are permitted on the step symbols h and tau only, which is exactly what a
// finite-difference stencil needs before Taylor cancellation.
class Expr {
 public:
  using TermMap = std::map<Monomial, Rat, MonomialLess>;

  Expr() = default;  // zero

  static Expr constant(Rat c);
  static Expr constant(long num, long den = 1) { return constant(rat(num, den)); }
  static Expr sym(Symbol s) { return term(Rat(1), Monomial::of(s)); }
  static Expr term(Rat c, const Monomial& m);

  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // If the expression is a single term c*m, returns it.
  std::optional<std::pair<Rat, Monomial>> as_single_term() const;
  // Constant term's coefficient (zero if absent).
  Rat constant_part() const;

  Expr operator-() const;
  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator*(const Rat& c, const Expr& e);
  friend Expr operator*(const Expr& e, const Rat& c) { return c * e; }
  bool operator==(const Expr&) const = default;

  // Nonnegative exponents always work; negative ones require the expression
  // to be a single invertible term (unit coefficient times an h/tau monomial).
  Expr pow(int k) const;
  // Multiplicative inverse of a single-term expression whose monomial only
  // involves h and tau.  Empty if the expression is not of that shape.
  std::optional<Expr> inverse() const;

  // Formal partial derivative with respect to one symbol.  Differentiating by
  // h or tau is rejected while negative powers of that symbol are present:
  // such an expression is still a raw stencil, not a polynomial in the step.
  Expr diff(Symbol v) const;

  // Total derivative along a grid axis, acting on jet polynomials: the base
  // variable of the axis differentiates to 1, u and jets are promoted one
  // order along the axis.  Grid samples must be expanded away first.
  Expr total(Axis axis) const;

  // Substitute an expression for every occurrence of a symbol.  A negative
  // power of v requires the replacement to be invertible (single term); the
  // result must respect the Laurent discipline or the call throws.
  Expr subst(Symbol v, const Expr& replacement) const;

  // Group terms by their sub-monomial over `vars`: the key collects exactly
  // the vars-exponents, the value the remaining cofactor polynomial.
  std::map<Monomial, Expr, MonomialLess> collect(const std::set<Symbol>& vars) const;

  std::set<Symbol> support() const;
  bool contains(Symbol s) const;
  // Most negative exponent of s over all terms (0 if s never negative).
  int min_exponent(Symbol s) const;
  // Highest total derivative order among jet symbols present (0 if none).
  int max_jet_order() const;
  // Highest pure-x jet order (0 if none).
  int max_x_order() const;
  bool has_t_jet() const;

  std::string str() const;

 private:
  // Adds c*m, merging and dropping zeros; enforces the Laurent discipline.
  void add_term(const Monomial& m, const Rat& c);

  TermMap terms_;
};

// Splits by the (tau, h) bidegree: key.first = tau exponent, key.second = h
// exponent; the parts no longer contain tau or h.
std::map<std::pair<int, int>, Expr> split_by_steps(const Expr& e);

}  // namespace symflux
