#pragma once

#include "einext/errors.hpp"
#include "einext/rational.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace einext {

/*
 * Rank by fraction-free (Bareiss) elimination.
 *
 * Every division in the update is exact, so for integer input all
 * intermediates stay integral; for Rational input no rounding can occur
 * either. Singularity is detected exactly (pivot == 0).
 */
template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m = a;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Scalar prev_pivot(1);
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < rows; ++r) {
      if (m(r, col) != Scalar(0)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    m.row(rank).swap(m.row(pivot));
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      for (Eigen::Index c = col + 1; c < cols; ++c) {
        m(r, c) = (m(rank, col) * m(r, c) - m(r, col) * m(rank, c)) / prev_pivot;
      }
      m(r, col) = Scalar(0);
    }
    prev_pivot = m(rank, col);
    ++rank;
  }
  return rank;
}

// Solves a x = b exactly by Gauss-Jordan elimination. Throws RankError when singular.
RationalVector solve_exact(RationalMatrix a, RationalVector b);

/*
 * Incrementally grown row space of small integer vectors.
 *
 * Rows are kept in echelon form with gcd-normalized entries, so membership
 * tests need only integer cross-multiplication. Intended for the {-1,0,1}
 * root vectors of dimension <= ~10; overflow is detected and reported.
 */
class IntegerSpan {
 public:
  explicit IntegerSpan(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  bool contains(const std::vector<std::int64_t>& v) const;

  // Returns false (and leaves the span unchanged) when v is already contained.
  bool add(const std::vector<std::int64_t>& v);

 private:
  std::vector<std::int64_t> reduce(std::vector<std::int64_t> v) const;

  int dim_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<int> pivots_;
};

}  // namespace einext
