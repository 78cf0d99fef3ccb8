#include "symflux/flow.hpp"

#include <array>
#include <map>
#include <sstream>
#include <stdexcept>

namespace symflux {

namespace {

constexpr size_t kVars = 6;   // x, t, u, h, tau, nu
constexpr size_t kConst = 6;  // extra affine column

const std::array<Symbol, kVars>& flow_vars() {
  static const std::array<Symbol, kVars> vars = {sym_x(), sym_t(), sym_u(),
                                                 sym_h(), sym_tau(), sym_nu()};
  return vars;
}

// Affine combination of the initial variable values and 1.
using Lin = std::array<Rat, kVars + 1>;
// Exponential-polynomial in the parameter a: lambda -> power of a -> value.
template <typename V>
using ExpPoly = std::map<Rat, std::map<int, V>>;

bool is_zero(const Lin& l) {
  for (const Rat& c : l)
    if (c != 0) return false;
  return true;
}

// integral_0^a exp(lambda (a-s)) s^k exp(mu s) ds as scalar terms.
ExpPoly<Rat> kernel(const Rat& lambda, const Rat& mu, int k) {
  ExpPoly<Rat> out;
  if (lambda == mu) {
    out[lambda][k + 1] = rat(1, k + 1);
    return out;
  }
  Rat delta = mu - lambda;
  if (k == 0) {
    out[mu][0] = 1 / delta;
    out[lambda][0] = -1 / delta;
    return out;
  }
  out[mu][k] = 1 / delta;
  Rat factor = Rat(-k) / delta;
  for (const auto& [l, powers] : kernel(lambda, mu, k - 1))
    for (const auto& [p, c] : powers) out[l][p] += factor * c;
  return out;
}

std::string rat_term(const Rat& r) {
  return r.get_str();
}

std::string exp_piece(const Rat& lambda) {
  if (lambda == 1) return "exp(a)";
  if (lambda == -1) return "exp(-a)";
  return "exp(" + rat_term(lambda) + "*a)";
}

std::string render(const ExpPoly<Lin>& image) {
  // term order: power of a first, then lambda (0 leading), then column
  struct Term {
    int k;
    bool has_exp;
    Rat lambda;
    size_t col;
    Rat coeff;
  };
  std::vector<Term> terms;
  for (const auto& [lambda, powers] : image)
    for (const auto& [k, lin] : powers)
      for (size_t col = 0; col <= kVars; ++col)
        if (lin[col] != 0) terms.push_back({k, lambda != 0, lambda, col, lin[col]});
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.k != b.k) return a.k < b.k;
    if (a.has_exp != b.has_exp) return !a.has_exp;
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.col < b.col;
  });
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const Term& t : terms) {
    Rat mag = abs(t.coeff);
    if (first) {
      if (t.coeff < 0) out << "-";
      first = false;
    } else {
      out << (t.coeff < 0 ? " - " : " + ");
    }
    std::vector<std::string> pieces;
    if (t.k > 0) pieces.push_back(t.k == 1 ? "a" : "a^" + std::to_string(t.k));
    if (t.lambda != 0) pieces.push_back(exp_piece(t.lambda));
    if (t.col < kVars) pieces.push_back(flow_vars()[t.col].name());
    if (mag != 1 || pieces.empty()) pieces.insert(pieces.begin(), rat_term(mag));
    for (size_t i = 0; i < pieces.size(); ++i) out << (i ? "*" : "") << pieces[i];
  }
  return out.str();
}

}  // namespace

FlowResult affine_flow(const InfinitesimalSet& inf) {
  // Read off z' = A z + b; any higher-degree term means no affine flow.
  std::array<std::array<Rat, kVars>, kVars> A{};
  std::array<Rat, kVars> b{};
  std::map<Symbol, size_t> index;
  for (size_t i = 0; i < kVars; ++i) index[flow_vars()[i]] = i;

  for (size_t i = 0; i < kVars; ++i) {
    const Expr& comp = inf[kAllSlots[i]];
    for (const auto& [m, c] : comp.terms()) {
      if (m.empty()) {
        b[i] = c;
        continue;
      }
      const auto& factors = m.factors();
      if (factors.size() != 1 || factors[0].second != 1 || !index.count(factors[0].first))
        return {FlowKind::NonAffine, {}};
      A[i][index.at(factors[0].first)] = c;
    }
  }

  // Topological order over off-diagonal dependencies.
  std::array<int, kVars> indegree{};
  for (size_t i = 0; i < kVars; ++i)
    for (size_t j = 0; j < kVars; ++j)
      if (i != j && A[i][j] != 0) ++indegree[i];
  std::vector<size_t> order;
  std::array<bool, kVars> done{};
  while (order.size() < kVars) {
    bool progressed = false;
    for (size_t i = 0; i < kVars; ++i) {
      if (done[i] || indegree[i] != 0) continue;
      order.push_back(i);
      done[i] = true;
      progressed = true;
      for (size_t k = 0; k < kVars; ++k)
        if (k != i && A[k][i] != 0) --indegree[k];
    }
    if (!progressed) return {FlowKind::NonTriangular, {}};
  }

  // Integrate bottom-up: z_i(a) = exp(lambda a) z_i(0)
  //   + integral of exp(lambda (a-s)) * (b_i + sum_j A_ij z_j(s)) ds.
  std::array<ExpPoly<Lin>, kVars> z;
  for (size_t i : order) {
    const Rat& lambda = A[i][i];
    ExpPoly<Lin> zi;
    {
      Lin init{};
      init[i] = 1;
      zi[lambda][0] = init;
    }
    // forcing terms as (mu, k, Lin)
    std::vector<std::tuple<Rat, int, Lin>> forcing;
    if (b[i] != 0) {
      Lin l{};
      l[kConst] = b[i];
      forcing.emplace_back(Rat(0), 0, l);
    }
    for (size_t j = 0; j < kVars; ++j) {
      if (j == i || A[i][j] == 0) continue;
      for (const auto& [mu, powers] : z[j])
        for (const auto& [k, lin] : powers) {
          Lin scaled;
          for (size_t c = 0; c <= kVars; ++c) scaled[c] = A[i][j] * lin[c];
          forcing.emplace_back(mu, k, scaled);
        }
    }
    for (const auto& [mu, k, lin] : forcing) {
      for (const auto& [l, powers] : kernel(lambda, mu, k))
        for (const auto& [p, c] : powers) {
          Lin& acc = zi[l][p];
          for (size_t col = 0; col <= kVars; ++col) acc[col] += c * lin[col];
        }
    }
    // prune zero entries for stable rendering
    for (auto it = zi.begin(); it != zi.end();) {
      for (auto jt = it->second.begin(); jt != it->second.end();)
        jt = is_zero(jt->second) ? it->second.erase(jt) : std::next(jt);
      it = it->second.empty() ? zi.erase(it) : std::next(it);
    }
    z[i] = std::move(zi);
  }

  FlowResult result;
  result.kind = FlowKind::Affine;
  for (size_t i = 0; i < kVars; ++i) result.images.emplace_back(flow_vars()[i], render(z[i]));
  return result;
}

}  // namespace symflux
