#include "symflux/modeq.hpp"

#include "symflux/log.hpp"

#include <algorithm>
#include <map>

namespace symflux {

namespace {

constexpr int kMaxTaylorOrder = 8;

// Shared machinery for eliminating t-derivatives: d^b u/dt^b as a pure-x jet
// polynomial, and its x-derivatives, both memoised.
class TimeClosure {
 public:
  explicit TimeClosure(const Expr& pde_rhs) : rhs_(pde_rhs) {}

  const Expr& g(int b) {
    if (b < 1) throw std::invalid_argument("time derivative order must be >= 1");
    while (static_cast<int>(g_.size()) < b) {
      if (g_.empty()) {
        g_.push_back(rhs_);
      } else {
        g_.push_back(eliminate(g_.back().total(Axis::T)));
      }
    }
    return g_[static_cast<size_t>(b - 1)];
  }

  const Expr& dx_g(int a, int b) {
    auto key = std::make_pair(a, b);
    auto it = dxg_.find(key);
    if (it != dxg_.end()) return it->second;
    Expr value = a == 0 ? g(b) : dx_g(a - 1, b).total(Axis::X);
    return dxg_.emplace(key, std::move(value)).first->second;
  }

  // Replaces every jet with a t-component by x-derivatives of the g's.
  Expr eliminate(const Expr& e) {
    Expr out;
    for (const auto& [m, c] : e.terms()) {
      Expr term = Expr::term(c, Monomial());
      for (const auto& [sym, exp] : m.factors()) {
        if (sym.is_jet() && sym.jet_t() > 0) {
          term = term * dx_g(sym.jet_x(), sym.jet_t()).pow(exp);
        } else {
          term = term * Expr::term(Rat(1), Monomial::of(sym, exp));
        }
      }
      out += term;
    }
    return out;
  }

 private:
  Expr rhs_;
  std::vector<Expr> g_;
  std::map<std::pair<int, int>, Expr> dxg_;
};

std::set<Grading> minimal_elements(const std::set<Grading>& s) {
  std::set<Grading> mins;
  for (const Grading& a : s) {
    bool dominated = false;
    for (const Grading& b : s) {
      if (b != a && b.first <= a.first && b.second <= a.second) {
        dominated = true;
        break;
      }
    }
    if (!dominated) mins.insert(a);
  }
  return mins;
}

std::string grading_str(const Grading& g) {
  std::string s;
  if (g.first > 0) s += "tau" + (g.first > 1 ? "^" + std::to_string(g.first) : "");
  if (g.second > 0) {
    if (!s.empty()) s += "*";
    s += "h" + (g.second > 1 ? "^" + std::to_string(g.second) : "");
  }
  return s.empty() ? "1" : s;
}

}  // namespace

Expr shift_expand(Symbol sample, int order) {
  if (!sample.is_sample()) throw std::invalid_argument("shift_expand expects a grid sample");
  if (order < 0) throw std::invalid_argument("negative expansion order");
  Rat p(sample.sample_p2(), 2);
  p.canonicalize();
  Rat q(sample.sample_q());
  Expr out;
  for (int a = 0; a + 0 <= order; ++a) {
    if (p == 0 && a > 0) break;
    for (int b = 0; a + b <= order; ++b) {
      if (q == 0 && b > 0) break;
      Rat coeff = rat_pow(p, a) * rat_pow(q, b) / (rat_factorial(a) * rat_factorial(b));
      if (coeff == 0) continue;
      Monomial m;
      if (a + b > 0) m = Monomial::of(Symbol::jet(a, b));
      else m = Monomial::of(sym_u());
      if (a > 0) m = m.times(Monomial::of(sym_h(), a));
      if (b > 0) m = m.times(Monomial::of(sym_tau(), b));
      out += Expr::term(coeff, m);
    }
  }
  return out;
}

Expr taylor_form(const Expr& stencil, const Expr& pde_rhs, int order) {
  Expr gamma = stencil;
  for (Symbol s : stencil.support()) {
    if (s.is_sample()) gamma = gamma.subst(s, shift_expand(s, order));
  }
  if (gamma.min_exponent(sym_h()) < 0 || gamma.min_exponent(sym_tau()) < 0)
    throw AnalysisError(
        "stencil leaves negative powers of the step sizes after expansion; "
        "the scheme does not approximate a differential equation");

  const Expr ut = Expr::sym(Symbol::jet(0, 1));
  auto parts = split_by_steps(gamma);
  auto it = parts.find({0, 0});
  if (it == parts.end())
    throw AnalysisError("scheme must be written in divided form approximating u_t = rhs");
  // Normalise a constant multiple: the u_t coefficient of the step-free part.
  auto groups = it->second.collect({Symbol::jet(0, 1)});
  auto lead = groups.find(Monomial::of(Symbol::jet(0, 1)));
  if (lead == groups.end() || !lead->second.as_single_term() ||
      !lead->second.as_single_term()->second.empty())
    throw AnalysisError("scheme must be written in divided form approximating u_t = rhs");
  Rat c = lead->second.as_single_term()->first;
  if (c != 1) gamma = Rat(1 / c) * gamma;
  Expr zero_part = split_by_steps(gamma).at({0, 0});
  if (zero_part != ut - pde_rhs)
    throw AnalysisError("scheme is not consistent with the pde: its step-free part is (" +
                        zero_part.str() + "), expected (" + (ut - pde_rhs).str() + ")");
  return gamma;
}

Expr pde_time_derivative(const Expr& pde_rhs, int k) {
  for (Symbol s : pde_rhs.support())
    if (s.is_sample() || (s.is_jet() && s.jet_t() > 0))
      throw std::invalid_argument("pde right-hand side must be a pure-x jet polynomial");
  TimeClosure closure(pde_rhs);
  return closure.g(k);
}

DifferentialApproximation spatial_form(const Expr& gamma, const Expr& pde_rhs,
                                       const std::set<Grading>& retained) {
  TimeClosure closure(pde_rhs);
  auto parts = split_by_steps(gamma);
  DifferentialApproximation da;
  auto it = parts.find({0, 0});
  if (it == parts.end()) throw AnalysisError("expansion lacks a step-free part");
  da.pde_part = it->second;
  da.retained = retained;
  for (const Grading& g : retained) {
    auto part = parts.find(g);
    if (part == parts.end()) continue;
    Expr reduced = closure.eliminate(part->second);
    if (reduced.is_zero()) continue;
    Monomial steps;
    if (g.first != 0) steps = steps.times(Monomial::of(sym_tau(), g.first));
    if (g.second != 0) steps = steps.times(Monomial::of(sym_h(), g.second));
    da.error_part += Expr::term(Rat(1), steps) * reduced;
  }
  return da;
}

ModifiedEquation derive_modified_equation(const Expr& stencil, const Expr& pde_rhs,
                                          std::optional<int> taylor_order, int error_levels) {
  if (error_levels < 1) throw std::invalid_argument("error_levels must be >= 1");
  // A scheme must vanish identically on constant grid functions.
  {
    Expr probe = stencil;
    for (Symbol s : stencil.support())
      if (s.is_sample()) probe = probe.subst(s, Expr::sym(sym_u()));
    if (!probe.is_zero())
      throw AnalysisError("scheme does not vanish on constant grid functions");
  }
  const int dx = -stencil.min_exponent(sym_h());
  const int dt = -stencil.min_exponent(sym_tau());

  int order = taylor_order ? *taylor_order : std::max(dx + dt + 2, 3);
  for (;; ++order) {
    if (order > kMaxTaylorOrder)
      throw AnalysisError("no truncation error found up to Taylor order " +
                          std::to_string(kMaxTaylorOrder));
    Expr gamma = taylor_form(stencil, pde_rhs, order);
    const int horizon = order - dx - dt;

    // Candidate gradings: nonzero after t-elimination, trustworthy within
    // the horizon (all their expansion terms were kept exactly).
    TimeClosure closure(pde_rhs);
    std::map<Grading, Expr> eliminated;
    for (const auto& [g, part] : split_by_steps(gamma)) {
      if (g == Grading{0, 0} || g.first + g.second > horizon) continue;
      Expr reduced = closure.eliminate(part);
      if (!reduced.is_zero()) eliminated.emplace(g, std::move(reduced));
    }
    std::set<Grading> candidates;
    for (const auto& [g, e] : eliminated) {
      (void)e;
      candidates.insert(g);
    }

    std::set<Grading> retained, pool = candidates;
    std::set<Grading> leading;
    int levels = 0;
    while (levels < error_levels && !pool.empty()) {
      std::set<Grading> level = minimal_elements(pool);
      if (++levels == 1) leading = level;
      for (const Grading& g : level) {
        retained.insert(g);
        pool.erase(g);
      }
    }
    if (levels < error_levels) {
      if (!taylor_order && order < kMaxTaylorOrder) continue;  // widen the horizon
      throw AnalysisError("taylor_order " + std::to_string(order) +
                          " is too small to resolve the requested error terms");
    }

    ModifiedEquation result;
    result.da = spatial_form(gamma, pde_rhs, retained);
    result.taylor_order = order;
    result.approximation_order = result.da.full().max_x_order();
    result.leading.assign(leading.begin(), leading.end());
    std::sort(result.leading.begin(), result.leading.end());
    if (log_enabled()) {
      std::string msg = "modified equation: taylor order " + std::to_string(order) + ", leading";
      for (const Grading& g : result.leading) msg += " " + grading_str(g);
      log_line(msg);
    }
    return result;
  }
}

}  // namespace symflux
