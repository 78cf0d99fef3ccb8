#pragma once

#include "symflux/expr.hpp"
#include "symflux/infinitesimal.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace symflux {

struct SourcePos {
  int line = 1;
  int column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& message)
      : std::runtime_error("line " + std::to_string(pos.line) + ", column " +
                           std::to_string(pos.column) + ": " + message),
        pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct SchemeDecl {
  std::string name;
  Expr stencil;  // residual of the scheme, declared equal to zero
  SourcePos pos;
};

struct AnalysisOptions {
  std::optional<int> taylor_order;  // absent: chosen automatically
  std::optional<int> ansatz_degree;
  int error_levels = 1;  // how many layers of leading error gradings to keep
};

// One problem file: an evolution pde u_t = rhs, the schemes to analyse,
// optional dependency restrictions per generator component, and options.
struct Problem {
  Expr pde_rhs;
  std::vector<SchemeDecl> schemes;
  std::map<InfSlot, std::set<Symbol>> hints;  // may only shrink the defaults
  AnalysisOptions options;
};

Problem parse_problem(const std::string& text);

// Parses a standalone expression (the same grammar as inside declarations).
Expr parse_expression(const std::string& text);

}  // namespace symflux
