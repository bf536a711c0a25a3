#include "einext/exact_linalg.hpp"

#include <numeric>

namespace einext {

RationalVector solve_exact(RationalMatrix a, RationalVector b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionError("solve_exact: shape mismatch");
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = col; r < n; ++r) {
      if (!a(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw RankError("solve_exact: singular matrix");
    if (pivot != col) {
      a.row(col).swap(a.row(pivot));
      std::swap(b(col), b(pivot));
    }
    const Rational inv = Rational(1) / a(col, col);
    for (Eigen::Index c = col; c < n; ++c) a(col, c) *= inv;
    b(col) *= inv;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const Rational f = a(r, col);
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b(r) -= f * b(col);
    }
  }
  return b;
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw Error("IntegerSpan: integer overflow");
  return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(a, b, &out)) throw Error("IntegerSpan: integer overflow");
  return out;
}

void normalize(std::vector<std::int64_t>& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
}

}  // namespace

std::vector<std::int64_t> IntegerSpan::reduce(std::vector<std::int64_t> v) const {
  if (static_cast<int>(v.size()) != dim_) throw DimensionError("IntegerSpan: vector dimension mismatch");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const int c = pivots_[r];
    if (v[c] == 0) continue;
    const auto& row = rows_[r];
    const std::int64_t a = row[c];
    const std::int64_t b = v[c];
    for (int i = 0; i < dim_; ++i) v[i] = checked_sub(checked_mul(a, v[i]), checked_mul(b, row[i]));
    normalize(v);
  }
  return v;
}

bool IntegerSpan::contains(const std::vector<std::int64_t>& v) const {
  auto r = reduce(v);
  for (auto x : r) {
    if (x != 0) return false;
  }
  return true;
}

bool IntegerSpan::add(const std::vector<std::int64_t>& v) {
  auto r = reduce(v);
  int pivot = -1;
  for (int i = 0; i < dim_; ++i) {
    if (r[i] != 0) {
      pivot = i;
      break;
    }
  }
  if (pivot < 0) return false;
  // reduce() leaves r zero on every existing pivot column, so rows stay echelon.
  rows_.push_back(std::move(r));
  pivots_.push_back(pivot);
  return true;
}

}  // namespace einext
