#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symflux/detsolve.hpp"
#include "symflux/flow.hpp"
#include "symflux/parser.hpp"

#include <random>

using namespace symflux;

namespace {

Expr E(const char* text) { return parse_expression(text); }

DifferentialApproximation continuous_burgers() {
  DifferentialApproximation da;
  da.pde_part = E("u_t + u*u_x - nu*u_xx");
  return da;
}

InfinitesimalSet inf_of(const char* xi1, const char* xi2, const char* eta,
                        const char* zeta1 = "0", const char* zeta2 = "0",
                        const char* chi = "0") {
  InfinitesimalSet s;
  s.xi1 = E(xi1);
  s.xi2 = E(xi2);
  s.eta = E(eta);
  s.zeta1 = E(zeta1);
  s.zeta2 = E(zeta2);
  s.chi = E(chi);
  return s;
}

LieGenerator gen(const char* label, const InfinitesimalSet& inf) { return {inf, label}; }

std::string image_of(const FlowResult& f, Symbol v) {
  for (const auto& [var, image] : f.images)
    if (var == v) return image;
  FAIL("no image for " << v.name());
  return "";
}

}  // namespace

TEST_CASE("dependency maps respect mode and hints") {
  DependencyMap d = dependency_map(true, {});
  CHECK(d.size() == 6);
  CHECK(d.at(InfSlot::Xi2) == std::set<Symbol>{sym_t()});
  CHECK(d.at(InfSlot::Chi).size() == 6);

  d = dependency_map(false, {});
  CHECK(d.size() == 4);  // no step components
  CHECK(d.count(InfSlot::Zeta1) == 0);
  CHECK(d.at(InfSlot::Chi) == std::set<Symbol>{sym_x(), sym_t(), sym_u(), sym_nu()});

  // hints only shrink; h/tau dependencies disappear in continuous mode anyway
  d = dependency_map(false, {{InfSlot::Eta, {sym_u(), sym_h()}}});
  CHECK(d.at(InfSlot::Eta) == std::set<Symbol>{sym_u()});
}

TEST_CASE("ansatz enumeration counts binomials") {
  DependencyMap deps = dependency_map(true, {});
  Ansatz a3 = build_ansatz(deps, 3);
  // per component: C(|deps|+3, 3) monomials
  CHECK(a3.coeffs.size() == 10 + 4 + 20 + 56 + 56 + 84);  // = 230
  Ansatz a2 = build_ansatz(dependency_map(false, {}), 2);
  CHECK(a2.coeffs.size() == 6 + 3 + 10 + 15);  // = 34
  // all coefficient symbols distinct and in index order
  for (size_t i = 0; i < a3.coeffs.size(); ++i) CHECK(a3.coeffs[i] == Symbol::coeff(i));
  // shape and component expressions agree
  Ansatz a0 = build_ansatz(DependencyMap{{InfSlot::Xi2, {sym_t()}}}, 1);
  REQUIRE(a0.coeffs.size() == 2);
  CHECK(a0.shape[0] == std::pair<InfSlot, Monomial>{InfSlot::Xi2, Monomial()});
  CHECK(a0.shape[1] == std::pair<InfSlot, Monomial>{InfSlot::Xi2, Monomial::of(sym_t())});
  CHECK(a0.inf.xi2 == Expr::sym(a0.coeffs[0]) + Expr::sym(sym_t()) * Expr::sym(a0.coeffs[1]));
  CHECK(a0.inf.xi1.is_zero());
}

TEST_CASE("determining system splits by monomial and stays linear") {
  std::vector<Symbol> cs = {Symbol::coeff(0), Symbol::coeff(1)};
  Expr c0 = Expr::sym(cs[0]), c1 = Expr::sym(cs[1]);
  Expr ux = E("u_x"), u = E("u");

  DeterminingSystem sys = determining_system((c0 - c1) * (ux + u), cs);
  REQUIRE(sys.matrix.rows == 2);
  CHECK(sys.tags[0] == Monomial::of(sym_u()));
  CHECK(sys.tags[1] == Monomial::of(Symbol::jet(1, 0)));
  auto ns = nullspace_basis(sys.matrix);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0] == std::vector<Rat>{Rat(1), Rat(1)});

  sys = determining_system(c0 * ux + (c0 + Rat(2) * c1) * u, cs);
  CHECK(nullspace_basis(sys.matrix).empty());

  CHECK(determining_system(Expr(), cs).matrix.rows == 0);
  CHECK_THROWS_AS(determining_system(c0 * c1 * ux, cs), VerificationError);
  CHECK_THROWS_AS(determining_system(c0.pow(2) * ux, cs), VerificationError);
  CHECK_THROWS_AS(determining_system(c0 * ux + u, cs), VerificationError);
  CHECK_THROWS_AS(determining_system(Expr::sym(Symbol::coeff(9)) * u, cs), VerificationError);
}

TEST_CASE("rational elimination basics") {
  RatMatrix m(3, 4);
  // rows: x0 + 2x1 = 0; x2 - x3 = 0; redundant row
  m.at(0, 0) = 1; m.at(0, 1) = 2;
  m.at(1, 2) = 1; m.at(1, 3) = -1;
  m.at(2, 0) = 2; m.at(2, 1) = 4;
  auto basis = nullspace_basis(m);
  REQUIRE(basis.size() == 2);
  for (const auto& v : basis) {
    CHECK(v[0] + 2 * v[1] == 0);
    CHECK(v[2] - v[3] == 0);
  }
  RatMatrix a(1, 3), b(2, 3);
  a.at(0, 0) = 1; a.at(0, 1) = 1;
  b.at(0, 0) = 2; b.at(0, 1) = 2;
  b.at(1, 0) = 1; b.at(1, 1) = 1; b.at(1, 2) = 1;
  CHECK_FALSE(same_row_space(a, b));
  CHECK(row_space_contains(b, a));
  CHECK_FALSE(row_space_contains(a, b));
}

TEST_CASE("nullspace certificate on random sparse systems") {
  std::mt19937 rng(414243);
  auto ri = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int trial = 0; trial < 100; ++trial) {
    size_t rows = static_cast<size_t>(ri(1, 8)), cols = static_cast<size_t>(ri(1, 10));
    RatMatrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r)
      for (size_t c = 0; c < cols; ++c)
        if (ri(0, 2) == 0) m.at(r, c) = rat(ri(-5, 5), ri(1, 3));
    RatMatrix copy = m;
    auto basis = nullspace_basis(m);
    size_t rank = rref_in_place(copy).size();
    CHECK(rank + basis.size() == cols);  // rank-nullity
    for (const auto& v : basis) {
      for (size_t r = 0; r < rows; ++r) {
        Rat dot(0);
        for (size_t c = 0; c < cols; ++c) dot += m.at(r, c) * v[c];
        CHECK(dot == 0);
      }
    }
  }
}

TEST_CASE("generator assembly normalises to coprime integers") {
  Ansatz a = build_ansatz(DependencyMap{{InfSlot::Eta, {sym_u()}}}, 1);
  DifferentialApproximation da;
  da.pde_part = E("u_t");  // u_t = 0 admits eta = c0 + c1 u
  auto gens = generators_from_basis(a, {{rat(1, 2), rat(1, 3)}, {rat(-1, 2), Rat(0)}}, da);
  REQUIRE(gens.size() == 2);
  CHECK(gens[0].inf.eta == E("3 + 2*u"));
  CHECK(gens[1].inf.eta == E("1"));  // sign flipped to a positive lead
  CHECK(gens[0].label == "L1");
  CHECK(gens[1].label == "L2");
}

TEST_CASE("generator assembly rejects non-symmetries") {
  Ansatz a = build_ansatz(DependencyMap{{InfSlot::Eta, {sym_u()}}}, 1);
  CHECK_THROWS_AS(generators_from_basis(a, {{Rat(1), Rat(0)}}, continuous_burgers()),
                  VerificationError);
  CHECK_THROWS_AS(generators_from_basis(a, {{Rat(0), Rat(0)}}, continuous_burgers()),
                  VerificationError);
}

TEST_CASE("degree-1 ansatz on continuous burgers finds the affine subalgebra") {
  DifferentialApproximation da = continuous_burgers();
  Ansatz ansatz = build_ansatz(dependency_map(false, {}), 1);
  Expr residual = ansatz_residual(ansatz, da);
  DeterminingSystem sys = determining_system(residual, ansatz.coeffs);
  auto gens = generators_from_basis(ansatz, nullspace_basis(sys.matrix), da);
  CHECK(gens.size() == 5);

  std::vector<LieGenerator> expected = {
      gen("A", inf_of("1", "0", "0")),
      gen("B", inf_of("0", "1", "0")),
      gen("C", inf_of("x", "2*t", "-u")),
      gen("D", inf_of("t", "0", "1")),
      gen("E", inf_of("0", "-t", "u", "0", "0", "nu")),
  };
  CHECK(span_equal(gens, expected));
  CHECK(span_contains(gens, {expected[3]}));
  // the projective generator needs degree 2 and must not appear here
  CHECK_FALSE(span_contains(gens, {gen("P", inf_of("x*t", "t^2", "x - u*t"))}));
}

TEST_CASE("span comparisons are basis independent") {
  LieGenerator l1 = gen("L1", inf_of("1", "0", "0"));
  LieGenerator l2 = gen("L2", inf_of("0", "1", "0"));
  LieGenerator sum = gen("S", inf_of("1", "1", "0"));
  LieGenerator diff = gen("D", inf_of("1", "-1", "0"));
  CHECK(span_equal({l1, l2}, {sum, diff}));
  CHECK_FALSE(span_equal({l1, l2}, {l1}));
  CHECK_FALSE(span_equal({l1}, {l2}));
  CHECK(span_equal({}, {}));
  CHECK_FALSE(span_equal({}, {l1}));
  CHECK(span_contains({l1, l2}, {sum}));
  CHECK_FALSE(span_contains({sum}, {l1}));
}

TEST_CASE("flows of the classical generators") {
  FlowResult f = affine_flow(inf_of("1", "0", "0"));
  CHECK(f.kind == FlowKind::Affine);
  CHECK(image_of(f, sym_x()) == "x + a");
  CHECK(image_of(f, sym_t()) == "t");

  f = affine_flow(inf_of("x", "2*t", "-u", "h", "2*tau"));
  CHECK(image_of(f, sym_x()) == "exp(a)*x");
  CHECK(image_of(f, sym_t()) == "exp(2*a)*t");
  CHECK(image_of(f, sym_u()) == "exp(-a)*u");
  CHECK(image_of(f, sym_h()) == "exp(a)*h");
  CHECK(image_of(f, sym_tau()) == "exp(2*a)*tau");
  CHECK(image_of(f, sym_nu()) == "nu");

  f = affine_flow(inf_of("t", "0", "1"));  // galilean boost
  CHECK(image_of(f, sym_x()) == "x + a*t");
  CHECK(image_of(f, sym_u()) == "u + a");
}

TEST_CASE("flows with forcing and resonance") {
  // x' = x + 1: x(a) = (x+1) e^a - 1
  FlowResult f = affine_flow(inf_of("x + 1", "0", "0"));
  CHECK(image_of(f, sym_x()) == "-1 + exp(a)*x + exp(a)");

  // x' = x + t, t' = t: resonant coupling
  f = affine_flow(inf_of("x + t", "t", "0"));
  CHECK(image_of(f, sym_x()) == "exp(a)*x + a*exp(a)*t");
  CHECK(image_of(f, sym_t()) == "exp(a)*t");

  // x' = 2t, t' = 3: quadratic drift
  f = affine_flow(inf_of("2*t", "3", "0"));
  CHECK(image_of(f, sym_x()) == "x + 2*a*t + 3*a^2");
}

TEST_CASE("flow classification") {
  CHECK(affine_flow(inf_of("x*t", "t^2", "x - u*t")).kind == FlowKind::NonAffine);
  CHECK(affine_flow(inf_of("u^2", "0", "0")).kind == FlowKind::NonAffine);
  InfinitesimalSet rotation;  // x' = t, t' = -x: not triangularisable
  rotation.xi1 = E("t");
  rotation.xi2 = E("-x");
  CHECK(affine_flow(rotation).kind == FlowKind::NonTriangular);
}
