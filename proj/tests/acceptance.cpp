// Acceptance gate: one line per criterion, PASS or FAIL, nonzero exit if any
// criterion fails.  Expected values are constructed independently of the
// solver pipeline (hand-built generator tables, the flux-form recursion for
// the time-derivative closures) so a silent regression cannot certify itself.

#include "symflux/analysis.hpp"
#include "symflux/detsolve.hpp"
#include "symflux/modeq.hpp"
#include "symflux/parser.hpp"
#include "symflux/prolong.hpp"

#include "property_suite.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace symflux;

namespace {

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Expr E(const std::string& text) { return parse_expression(text); }
Expr dx(const Expr& e) { return e.total(Axis::X); }

// Results shared between criteria, computed on first use.
struct Shared {
  Problem problem;

  // Pure time derivatives of u on solutions of u_t = -(u^2/2)_x + nu*u_xx,
  // built by the flux-form recursion rather than the solver's own closure.
  Expr dt1 = dx(E("-u^2/2")) + E("nu*u_xx");
  Expr dt2 = dx(-(dt1 * E("u"))) + E("nu") * dx(dx(dt1));
  Expr dt3 = dx(-(dt2 * E("u")) - dt1 * dt1) + E("nu") * dx(dx(dt2));

  std::map<std::string, ModifiedEquation> modeq;   // by scheme name
  std::map<std::string, double> modeq_seconds;     // derivation wall time
  std::optional<AnalysisResult> discrete;          // all three schemes, theta=3
  std::optional<AnalysisResult> continuous;        // pde only, theta=2
  double discrete_seconds = 0, continuous_seconds = 0;

  const ModifiedEquation& modified_equation(const std::string& name) {
    auto it = modeq.find(name);
    if (it != modeq.end()) return it->second;
    for (const SchemeDecl& s : problem.schemes) {
      if (s.name != name) continue;
      auto t0 = std::chrono::steady_clock::now();
      ModifiedEquation me = derive_modified_equation(s.stencil, problem.pde_rhs,
                                                     std::nullopt, 1);
      modeq_seconds[name] = elapsed(t0);
      return modeq.emplace(name, std::move(me)).first->second;
    }
    throw std::runtime_error("no scheme named '" + name + "' in the problem file");
  }

  const AnalysisResult& discrete_run() {
    if (!discrete) {
      auto t0 = std::chrono::steady_clock::now();
      RunOptions options;
      options.ansatz_degree = 3;
      discrete = run_analysis(problem, options);
      discrete_seconds = elapsed(t0);
    }
    return *discrete;
  }

  const AnalysisResult& continuous_run() {
    if (!continuous) {
      auto t0 = std::chrono::steady_clock::now();
      RunOptions options;
      options.pde_only = true;
      options.ansatz_degree = 2;
      continuous = run_analysis(problem, options);
      continuous_seconds = elapsed(t0);
    }
    return *continuous;
  }

  const SchemeAnalysis& scheme_result(const std::string& name) {
    for (const SchemeAnalysis& s : discrete_run().schemes)
      if (s.name == name) return s;
    throw std::runtime_error("no analysis result for scheme '" + name + "'");
  }
};

LieGenerator gen(const std::string& label,
                 const std::map<InfSlot, std::string>& components) {
  LieGenerator g;
  g.label = label;
  for (const auto& [slot, text] : components) g.inf[slot] = E(text);
  return g;
}

// The six-generator table of the continuous Burgers group.
std::vector<LieGenerator> continuous_table() {
  return {
      gen("L1", {{InfSlot::Xi1, "1"}}),
      gen("L2", {{InfSlot::Xi2, "1"}}),
      gen("L3", {{InfSlot::Xi1, "x"}, {InfSlot::Xi2, "2*t"}, {InfSlot::Eta, "-u"}}),
      gen("L4", {{InfSlot::Xi1, "x*t"}, {InfSlot::Xi2, "t^2"}, {InfSlot::Eta, "x - t*u"}}),
      gen("L5", {{InfSlot::Xi1, "t"}, {InfSlot::Eta, "1"}}),
      gen("L6", {{InfSlot::Xi2, "-t"}, {InfSlot::Eta, "u"}, {InfSlot::Chi, "nu"}}),
  };
}

// The four-generator table every scheme must reproduce.
std::vector<LieGenerator> discrete_table() {
  return {
      gen("L'1", {{InfSlot::Xi1, "1"}}),
      gen("L'2", {{InfSlot::Xi2, "1"}}),
      gen("L'3", {{InfSlot::Xi1, "x"},
                  {InfSlot::Xi2, "2*t"},
                  {InfSlot::Eta, "-u"},
                  {InfSlot::Zeta1, "h"},
                  {InfSlot::Zeta2, "2*tau"}}),
      gen("L'4", {{InfSlot::Xi1, "x"},
                  {InfSlot::Eta, "u"},
                  {InfSlot::Zeta1, "h"},
                  {InfSlot::Chi, "2*nu"}}),
  };
}

struct Outcome {
  bool ok = true;
  std::string detail;  // attached to FAIL lines

  void require(bool condition, const std::string& message) {
    if (condition) return;
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += message;
  }
};

std::string seconds_str(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << s << "s";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  std::string path = argc > 1 ? argv[1] : "problems/burgers.lfd";
  Shared shared;
  try {
    shared.problem = parse_problem(read_file(path));
  } catch (const std::exception& e) {
    std::cerr << "cannot load problem file: " << e.what() << "\n";
    return 1;
  }

  struct Criterion {
    int id;
    std::string title;
    std::function<Outcome(Shared&)> check;
  };

  const std::vector<Criterion> criteria = {
      {1, "modified equations of ftcs, lax_wendroff and crank_nicolson match the "
          "expected closed forms",
       [](Shared& s) {
         Outcome out;
         const Expr pde = E("u_t + u*u_x - nu*u_xx");
         const Expr h2 = Expr::sym(sym_h()).pow(2);
         const Expr tau = Expr::sym(sym_tau());
         const Expr space_error =
             rat(1, 12) * h2 * dx(dx(dx(E("u^2")))) - rat(1, 12) * h2 * E("nu*u_xxxx");
         const std::map<std::string, Expr> expected = {
             {"ftcs", pde + rat(1, 2) * tau * s.dt2 + space_error},
             {"lax_wendroff", pde + rat(1, 6) * tau * tau * s.dt3 + space_error},
             {"crank_nicolson",
              pde +
                  tau * tau *
                      (rat(1, 6) * s.dt3 + rat(1, 4) * dx(s.dt1 * s.dt1 + E("u") * s.dt2) -
                       rat(1, 4) * E("nu") * dx(dx(s.dt2))) +
                  space_error},
         };
         for (const auto& [name, want] : expected) {
           const ModifiedEquation& me = s.modified_equation(name);
           out.require(me.da.full() == want, name + ": differential approximation differs");
           out.require(s.modeq_seconds[name] < 5.0,
                       name + ": derivation exceeded 5s (" +
                           seconds_str(s.modeq_seconds[name]) + ")");
         }
         return out;
       }},
      {2, "continuous equation at degree 2 yields the six-parameter group",
       [](Shared& s) {
         Outcome out;
         const std::vector<LieGenerator>& got = s.continuous_run().schemes.at(0).generators;
         out.require(got.size() == 6, "expected 6 generators, got " +
                                          std::to_string(got.size()));
         out.require(span_equal(got, continuous_table()),
                     "span differs from the L1..L6 table");
         out.require(s.continuous_seconds < 30.0,
                     "run exceeded 30s (" + seconds_str(s.continuous_seconds) + ")");
         return out;
       }},
      {3, "ftcs at degree 3 yields the four-dimensional group",
       [](Shared& s) {
         Outcome out;
         const SchemeAnalysis& ftcs = s.scheme_result("ftcs");
         out.require(ftcs.generators.size() == 4,
                     "expected dimension 4, got " +
                         std::to_string(ftcs.generators.size()));
         out.require(span_equal(ftcs.generators, discrete_table()),
                     "span differs from the L'1..L'4 table");
         out.require(s.discrete_seconds < 120.0,
                     "run exceeded 120s (" + seconds_str(s.discrete_seconds) + ")");
         return out;
       }},
      {4, "lax_wendroff and crank_nicolson admit the same group as ftcs",
       [](Shared& s) {
         Outcome out;
         const SchemeAnalysis& ftcs = s.scheme_result("ftcs");
         for (const char* name : {"lax_wendroff", "crank_nicolson"}) {
           const SchemeAnalysis& other = s.scheme_result(name);
           out.require(span_equal(other.generators, ftcs.generators),
                       std::string(name) + ": span differs from ftcs");
         }
         out.require(s.discrete_seconds < 300.0,
                     "run exceeded 300s (" + seconds_str(s.discrete_seconds) + ")");
         return out;
       }},
      {5, "galilean and projective generators fail invariance on the ftcs "
          "approximation",
       [](Shared& s) {
         Outcome out;
         auto t0 = std::chrono::steady_clock::now();
         const DifferentialApproximation& da = s.modified_equation("ftcs").da;
         InfinitesimalSet galilean;
         galilean[InfSlot::Xi1] = E("t");
         galilean[InfSlot::Eta] = E("1");
         out.require(!invariance_residual(galilean, da).is_zero(),
                     "galilean residual unexpectedly vanished");
         InfinitesimalSet projective;
         projective[InfSlot::Xi1] = E("x*t");
         projective[InfSlot::Xi2] = E("t^2");
         projective[InfSlot::Eta] = E("x - t*u");
         out.require(!invariance_residual(projective, da).is_zero(),
                     "projective residual unexpectedly vanished");
         out.require(elapsed(t0) < 5.0, "check exceeded 5s");
         return out;
       }},
      {6, "every emitted generator passes an independently recomputed "
          "invariance residual",
       [](Shared& s) {
         Outcome out;
         int checked = 0;
         for (const SchemeAnalysis& res : s.continuous_run().schemes) {
           for (const LieGenerator& g : res.generators) {
             out.require(invariance_residual(g.inf, res.modeq.da).is_zero(),
                         "pde " + g.label + ": nonzero residual");
             ++checked;
           }
         }
         for (const SchemeAnalysis& res : s.discrete_run().schemes) {
           for (const LieGenerator& g : res.generators) {
             out.require(invariance_residual(g.inf, res.modeq.da).is_zero(),
                         res.name + " " + g.label + ": nonzero residual");
             ++checked;
           }
         }
         out.require(checked == 6 + 3 * 4, "expected 18 generators, checked " +
                                               std::to_string(checked));
         return out;
       }},
      {7, "randomized kernel properties hold (1000 cases per family)",
       [](Shared&) {
         Outcome out;
         auto t0 = std::chrono::steady_clock::now();
         out.require(props::ring_axioms(0xC001, 1000) == 0, "ring axioms failed");
         out.require(props::leibniz(0xC002, 1000) == 0, "leibniz rule failed");
         out.require(props::derivative_commutation(0xC003, 1000) == 0,
                     "derivative commutation failed");
         out.require(props::reduction_morphism(0xC004, 1000) == 0,
                     "manifold reduction failed");
         out.require(props::nullspace_certificate(0xC005, 1000) == 0,
                     "nullspace certificate failed");
         double t = elapsed(t0);
         out.require(t < 60.0, "suite exceeded 60s (" + seconds_str(t) + ")");
         return out;
       }},
      {8, "leading error gradings are {tau, h^2} for ftcs and {tau^2, h^2} for "
          "lax_wendroff and crank_nicolson",
       [](Shared& s) {
         Outcome out;
         const std::vector<Grading> first_order = {{0, 2}, {1, 0}};
         const std::vector<Grading> second_order = {{0, 2}, {2, 0}};
         out.require(s.modified_equation("ftcs").leading == first_order,
                     "ftcs leading gradings differ");
         out.require(s.modified_equation("lax_wendroff").leading == second_order,
                     "lax_wendroff leading gradings differ");
         out.require(s.modified_equation("crank_nicolson").leading == second_order,
                     "crank_nicolson leading gradings differ");
         out.require(s.modified_equation("ftcs").approximation_order == 4,
                     "ftcs approximation order != 4");
         out.require(s.modified_equation("lax_wendroff").approximation_order == 6,
                     "lax_wendroff approximation order != 6");
         out.require(s.modified_equation("crank_nicolson").approximation_order == 6,
                     "crank_nicolson approximation order != 6");
         return out;
       }},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.check(shared);
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    double t = elapsed(t0);
    if (outcome.ok) {
      std::cout << "PASS criterion " << criterion.id << ": " << criterion.title << " ("
                << seconds_str(t) << ")\n";
    } else {
      ++failures;
      std::cout << "FAIL criterion " << criterion.id << ": " << criterion.title
                << " -- " << outcome.detail << "\n";
    }
  }
  std::cout << "acceptance: " << (criteria.size() - static_cast<size_t>(failures)) << "/"
            << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
