#pragma once

#include "symflux/detsolve.hpp"
#include "symflux/flow.hpp"
#include "symflux/modeq.hpp"
#include "symflux/parser.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symflux {

struct RunOptions {
  bool pde_only = false;             // analyse the continuous equation instead
  std::optional<int> taylor_order;   // overrides the file option
  std::optional<int> ansatz_degree;  // overrides the file option
  int jobs = 1;                      // schemes analysed concurrently
};

struct StageTimings {
  double modified_equation_s = 0;
  double determining_s = 0;
  double solve_s = 0;
  double total_s = 0;
};

struct SchemeAnalysis {
  std::string name;  // scheme name, or "pde" in pde-only mode
  ModifiedEquation modeq;
  Ansatz ansatz;
  DeterminingSystem system;
  std::vector<LieGenerator> generators;
  std::vector<FlowResult> flows;  // parallel to generators
  StageTimings timings;
};

struct AnalysisResult {
  Expr pde_rhs;
  int ansatz_degree = 0;
  bool pde_only = false;
  std::vector<SchemeAnalysis> schemes;
};

AnalysisResult run_analysis(const Problem& problem, const RunOptions& options);

}  // namespace symflux
