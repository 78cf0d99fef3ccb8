#include "symflux/linalg.hpp"

#include <stdexcept>

namespace symflux {

std::vector<size_t> rref_in_place(RatMatrix& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    size_t p = row;
    while (p < m.rows && m.at(p, col) == 0) ++p;
    if (p == m.rows) continue;
    if (p != row)
      for (size_t c = 0; c < m.cols; ++c) std::swap(m.at(p, c), m.at(row, c));
    Rat inv = 1 / m.at(row, col);
    for (size_t c = col; c < m.cols; ++c) m.at(row, c) *= inv;
    for (size_t r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Rat f = m.at(r, col);
      for (size_t c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rat>> nullspace_basis(RatMatrix m) {
  std::vector<size_t> pivots = rref_in_place(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rat>> basis;
  for (size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(m.cols, Rat(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

RatMatrix stack(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols != b.cols) throw std::invalid_argument("column counts differ");
  RatMatrix s(a.rows + b.rows, a.cols);
  s.data = a.data;
  s.data.insert(s.data.end(), b.data.begin(), b.data.end());
  return s;
}

size_t rank(RatMatrix m) { return rref_in_place(m).size(); }

}  // namespace

bool same_row_space(const RatMatrix& a, const RatMatrix& b) {
  size_t ra = rank(a), rb = rank(b);
  return ra == rb && rank(stack(a, b)) == ra;
}

bool row_space_contains(const RatMatrix& big, const RatMatrix& sub) {
  return rank(stack(big, sub)) == rank(big);
}

}  // namespace symflux
