#include "symflux/detsolve.hpp"

#include <algorithm>

namespace symflux {

DependencyMap dependency_map(bool with_steps,
                             const std::map<InfSlot, std::set<Symbol>>& hints) {
  DependencyMap deps;
  for (InfSlot slot : kAllSlots) {
    if (!with_steps && (slot == InfSlot::Zeta1 || slot == InfSlot::Zeta2))
      continue;  // no step components for a continuous equation
    std::set<Symbol> d = default_dependencies(slot, with_steps);
    auto hint = hints.find(slot);
    if (hint != hints.end()) {
      std::set<Symbol> cut;
      for (Symbol s : hint->second)
        if (d.count(s)) cut.insert(s);
      d = std::move(cut);
    }
    deps[slot] = std::move(d);
  }
  return deps;
}

namespace {

void enumerate_monomials(const std::vector<Symbol>& vars, size_t next, int budget,
                         const Monomial& acc, std::vector<Monomial>& out) {
  if (next == vars.size()) {
    out.push_back(acc);
    return;
  }
  for (int e = 0; e <= budget; ++e)
    enumerate_monomials(vars, next + 1, budget - e,
                        e == 0 ? acc : acc.times(Monomial::of(vars[next], e)), out);
}

}  // namespace

Ansatz build_ansatz(const DependencyMap& deps, int degree) {
  if (degree < 0) throw std::invalid_argument("ansatz degree must be >= 0");
  Ansatz ansatz;
  uint32_t index = 0;
  for (InfSlot slot : kAllSlots) {
    auto it = deps.find(slot);
    if (it == deps.end()) continue;
    std::vector<Symbol> vars(it->second.begin(), it->second.end());
    std::vector<Monomial> monomials;
    enumerate_monomials(vars, 0, degree, Monomial(), monomials);
    std::sort(monomials.begin(), monomials.end(),
              [](const Monomial& a, const Monomial& b) { return Monomial::cmp(a, b) < 0; });
    for (const Monomial& m : monomials) {
      Symbol c = Symbol::coeff(index++);
      ansatz.inf[slot] += Expr::term(Rat(1), m.times(Monomial::of(c)));
      ansatz.coeffs.push_back(c);
      ansatz.shape.emplace_back(slot, m);
    }
  }
  ansatz.inf.validate();
  return ansatz;
}

Expr ansatz_residual(const Ansatz& ansatz, const DifferentialApproximation& da) {
  ManifoldReducer reducer(da);
  Expr residual;
  // The residual map is linear in the generator, so assembling it one
  // coefficient monomial at a time equals one pass over the full ansatz
  // while keeping every intermediate expression small.
  for (size_t k = 0; k < ansatz.coeffs.size(); ++k) {
    InfinitesimalSet unit;
    unit[ansatz.shape[k].first] =
        Expr::term(Rat(1), ansatz.shape[k].second.times(Monomial::of(ansatz.coeffs[k])));
    residual += invariance_residual(unit, da, reducer);
  }
  return residual;
}

DeterminingSystem determining_system(const Expr& residual, const std::vector<Symbol>& coeffs) {
  std::map<Symbol, size_t> column;
  for (size_t i = 0; i < coeffs.size(); ++i) column[coeffs[i]] = i;

  std::map<Monomial, std::vector<Rat>, MonomialLess> rows;
  for (const auto& [m, c] : residual.terms()) {
    Symbol found = sym_x();
    int hits = 0;
    for (const auto& [sym, e] : m.factors()) {
      if (!sym.is_coeff()) continue;
      hits += e;
      found = sym;
    }
    if (hits != 1)
      throw VerificationError("residual is not linear in the ansatz coefficients: " + m.str());
    auto col = column.find(found);
    if (col == column.end())
      throw VerificationError("residual mentions unknown coefficient " + found.name());
    auto [it, inserted] = rows.emplace(m.without(found), std::vector<Rat>());
    if (inserted) it->second.assign(coeffs.size(), Rat(0));
    it->second[col->second] += c;
  }

  DeterminingSystem sys;
  sys.coeffs = coeffs;
  sys.matrix = RatMatrix(rows.size(), coeffs.size());
  size_t r = 0;
  for (auto& [tag, row] : rows) {
    sys.tags.push_back(tag);
    for (size_t c = 0; c < coeffs.size(); ++c) sys.matrix.at(r, c) = std::move(row[c]);
    ++r;
  }
  return sys;
}

namespace {

std::vector<Rat> integer_normalised(const std::vector<Rat>& v) {
  mpz_class lcm = 1;
  for (const Rat& x : v)
    if (x != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
  std::vector<Rat> w(v.size());
  mpz_class gcd = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = v[i] * Rat(lcm);
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), w[i].get_num().get_mpz_t());
  }
  if (gcd > 1)
    for (Rat& x : w) x /= Rat(gcd);
  for (const Rat& x : w) {
    if (x == 0) continue;
    if (x < 0)
      for (Rat& y : w) y = -y;
    break;
  }
  return w;
}

}  // namespace

std::vector<LieGenerator> generators_from_basis(const Ansatz& ansatz,
                                                const std::vector<std::vector<Rat>>& basis,
                                                const DifferentialApproximation& da) {
  ManifoldReducer reducer(da);
  std::vector<LieGenerator> out;
  for (const std::vector<Rat>& raw : basis) {
    if (raw.size() != ansatz.coeffs.size())
      throw VerificationError("basis vector length does not match the ansatz");
    std::vector<Rat> v = integer_normalised(raw);
    LieGenerator g;
    for (size_t k = 0; k < v.size(); ++k) {
      if (v[k] == 0) continue;
      g.inf[ansatz.shape[k].first] += Expr::term(v[k], ansatz.shape[k].second);
    }
    g.label = "L" + std::to_string(out.size() + 1);
    if (g.inf.is_zero()) throw VerificationError("nullspace produced a zero generator");
    if (!invariance_residual(g.inf, da, reducer).is_zero())
      throw VerificationError("generator " + g.label + " fails its own invariance check");
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

struct ColKey {
  int slot;
  Monomial m;
  bool operator<(const ColKey& o) const {
    if (slot != o.slot) return slot < o.slot;
    return Monomial::cmp(m, o.m) < 0;
  }
};

RatMatrix vectorise(const std::vector<LieGenerator>& gens, const std::map<ColKey, size_t>& cols) {
  RatMatrix m(gens.size(), cols.size());
  for (size_t r = 0; r < gens.size(); ++r) {
    for (InfSlot slot : kAllSlots) {
      for (const auto& [mono, c] : gens[r].inf[slot].terms())
        m.at(r, cols.at({static_cast<int>(slot), mono})) = c;
    }
  }
  return m;
}

std::map<ColKey, size_t> joint_columns(const std::vector<LieGenerator>& a,
                                       const std::vector<LieGenerator>& b) {
  std::map<ColKey, size_t> cols;
  auto scan = [&cols](const std::vector<LieGenerator>& gens) {
    for (const LieGenerator& g : gens)
      for (InfSlot slot : kAllSlots)
        for (const auto& [mono, c] : g.inf[slot].terms()) {
          (void)c;
          cols.emplace(ColKey{static_cast<int>(slot), mono}, 0);
        }
  };
  scan(a);
  scan(b);
  size_t i = 0;
  for (auto& [key, idx] : cols) {
    (void)key;
    idx = i++;
  }
  return cols;
}

}  // namespace

bool span_equal(const std::vector<LieGenerator>& a, const std::vector<LieGenerator>& b) {
  auto cols = joint_columns(a, b);
  return same_row_space(vectorise(a, cols), vectorise(b, cols));
}

bool span_contains(const std::vector<LieGenerator>& big, const std::vector<LieGenerator>& small) {
  auto cols = joint_columns(big, small);
  return row_space_contains(vectorise(big, cols), vectorise(small, cols));
}

}  // namespace symflux
