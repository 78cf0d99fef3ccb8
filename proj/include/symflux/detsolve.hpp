#pragma once

#include "symflux/infinitesimal.hpp"
#include "symflux/linalg.hpp"
#include "symflux/modeq.hpp"
#include "symflux/prolong.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace symflux {

// Raised when an internal soundness guarantee is violated (a residual that is
// not linear in the ansatz coefficients, or a solved generator that fails its
// own invariance check).  Distinct from AnalysisError: this one means a bug,
// not a bad input.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Dependency set per generator component; a slot missing from the map is
// pinned to zero identically.
using DependencyMap = std::map<InfSlot, std::set<Symbol>>;

// Defaults (discrete or continuous) intersected with the user's hints.
DependencyMap dependency_map(bool with_steps, const std::map<InfSlot, std::set<Symbol>>& hints);

// Every component filled with all monomials of total degree <= degree over
// its dependency set, each carrying a fresh coefficient symbol.
struct Ansatz {
  InfinitesimalSet inf;
  std::vector<Symbol> coeffs;
  std::vector<std::pair<InfSlot, Monomial>> shape;  // coeff index -> origin
};

Ansatz build_ansatz(const DependencyMap& deps, int degree);

// Invariance residual of the full ansatz, assembled coefficient by
// coefficient (the residual is linear in the generator).
Expr ansatz_residual(const Ansatz& ansatz, const DifferentialApproximation& da);

// The residual split into one linear equation per monomial of the remaining
// variables: matrix row r states "tags[r]-coefficient of the residual is 0".
struct DeterminingSystem {
  std::vector<Symbol> coeffs;
  RatMatrix matrix;
  std::vector<Monomial> tags;
};

DeterminingSystem determining_system(const Expr& residual, const std::vector<Symbol>& coeffs);

struct LieGenerator {
  InfinitesimalSet inf;
  std::string label;
};

// Substitutes each nullspace vector into the ansatz, normalises to coprime
// integer coefficients with positive leading entry, labels the result L1,
// L2, ... and certifies that each generator's own residual vanishes.
std::vector<LieGenerator> generators_from_basis(const Ansatz& ansatz,
                                                const std::vector<std::vector<Rat>>& basis,
                                                const DifferentialApproximation& da);

// Span comparisons over the joint coefficient space of both sets.
bool span_equal(const std::vector<LieGenerator>& a, const std::vector<LieGenerator>& b);
bool span_contains(const std::vector<LieGenerator>& big, const std::vector<LieGenerator>& small);

}  // namespace symflux
