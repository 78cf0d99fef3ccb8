#include "symflux/analysis.hpp"

#include "symflux/log.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

namespace symflux {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void solve_symmetries(SchemeAnalysis& out, const Problem& problem, bool with_steps,
                      int degree) {
  auto t0 = std::chrono::steady_clock::now();
  DependencyMap deps = dependency_map(with_steps, problem.hints);
  out.ansatz = build_ansatz(deps, degree);
  Expr residual = ansatz_residual(out.ansatz, out.modeq.da);
  out.system = determining_system(residual, out.ansatz.coeffs);
  out.timings.determining_s = seconds_since(t0);
  log_line(out.name + ": determining system has " + std::to_string(out.system.matrix.rows) +
           " rows over " + std::to_string(out.ansatz.coeffs.size()) + " coefficients");

  auto t1 = std::chrono::steady_clock::now();
  out.generators = generators_from_basis(out.ansatz, nullspace_basis(out.system.matrix),
                                         out.modeq.da);
  for (const LieGenerator& g : out.generators) out.flows.push_back(affine_flow(g.inf));
  out.timings.solve_s = seconds_since(t1);
  log_line(out.name + ": symmetry algebra has dimension " +
           std::to_string(out.generators.size()));
}

SchemeAnalysis analyse_pde(const Problem& problem, int degree) {
  SchemeAnalysis out;
  out.name = "pde";
  auto t0 = std::chrono::steady_clock::now();
  out.modeq.da.pde_part = Expr::sym(Symbol::jet(0, 1)) - problem.pde_rhs;
  out.modeq.approximation_order = out.modeq.da.pde_part.max_x_order();
  out.timings.modified_equation_s = seconds_since(t0);
  solve_symmetries(out, problem, /*with_steps=*/false, degree);
  out.timings.total_s = seconds_since(t0);
  return out;
}

SchemeAnalysis analyse_scheme(const SchemeDecl& scheme, const Problem& problem,
                              std::optional<int> taylor_order, int degree) {
  SchemeAnalysis out;
  out.name = scheme.name;
  auto t0 = std::chrono::steady_clock::now();
  out.modeq = derive_modified_equation(scheme.stencil, problem.pde_rhs, taylor_order,
                                       problem.options.error_levels);
  out.timings.modified_equation_s = seconds_since(t0);
  log_line(scheme.name + ": taylor order " + std::to_string(out.modeq.taylor_order) +
           ", approximation order " + std::to_string(out.modeq.approximation_order));
  solve_symmetries(out, problem, /*with_steps=*/true, degree);
  out.timings.total_s = seconds_since(t0);
  return out;
}

}  // namespace

AnalysisResult run_analysis(const Problem& problem, const RunOptions& options) {
  AnalysisResult result;
  result.pde_rhs = problem.pde_rhs;
  result.pde_only = options.pde_only;
  result.ansatz_degree =
      options.ansatz_degree.value_or(problem.options.ansatz_degree.value_or(3));
  if (result.ansatz_degree < 0 || result.ansatz_degree > 8)
    throw AnalysisError("ansatz degree must lie in [0, 8]");
  std::optional<int> taylor = options.taylor_order ? options.taylor_order
                                                   : problem.options.taylor_order;

  if (options.pde_only) {
    result.schemes.push_back(analyse_pde(problem, result.ansatz_degree));
    return result;
  }

  if (problem.schemes.empty()) throw AnalysisError("problem declares no schemes");
  const size_t n = problem.schemes.size();
  result.schemes.resize(n);
  std::vector<std::exception_ptr> errors(n);

  unsigned jobs = static_cast<unsigned>(std::max(1, options.jobs));
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(n));
  if (jobs <= 1) {
    for (size_t i = 0; i < n; ++i)
      result.schemes[i] = analyse_scheme(problem.schemes[i], problem, taylor,
                                         result.ansatz_degree);
    return result;
  }

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        result.schemes[i] =
            analyse_scheme(problem.schemes[i], problem, taylor, result.ansatz_degree);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  for (size_t i = 0; i < n; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
  return result;
}

}  // namespace symflux
