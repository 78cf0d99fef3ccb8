#pragma once

#include "symflux/rational.hpp"

#include <cstddef>
#include <vector>

namespace symflux {

// Dense rational matrix, row-major.
struct RatMatrix {
  size_t rows = 0, cols = 0;
  std::vector<Rat> data;

  RatMatrix() = default;
  RatMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, Rat(0)) {}

  Rat& at(size_t r, size_t c) { return data[r * cols + c]; }
  const Rat& at(size_t r, size_t c) const { return data[r * cols + c]; }
};

// Gauss-Jordan elimination to reduced row echelon form.  Returns the pivot
// columns in order; rank = number of pivots.
std::vector<size_t> rref_in_place(RatMatrix& m);

// Canonical basis of {v : M v = 0}: one vector per free column with a unit
// entry there and zeros in all other free columns.
std::vector<std::vector<Rat>> nullspace_basis(RatMatrix m);

// Whether two matrices with the same column count span the same row space.
bool same_row_space(const RatMatrix& a, const RatMatrix& b);
// Whether every row of sub lies in the row space of big.
bool row_space_contains(const RatMatrix& big, const RatMatrix& sub);

}  // namespace symflux
