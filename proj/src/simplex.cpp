#include "einext/simplex.hpp"

#include "einext/errors.hpp"

#include <vector>

namespace einext {

namespace {

class Tableau {
 public:
  Tableau(const RationalMatrix& a, const RationalVector& b)
      : m_(a.rows()), n_(a.cols()), t_(a.rows() + 1, a.cols() + a.rows() + 1), basis_(a.rows()) {
    t_.setZero();
    sign_.resize(m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      sign_[i] = b(i).sign() < 0 ? -1 : 1;
      for (Eigen::Index j = 0; j < n_; ++j) t_(i, j) = sign_[i] < 0 ? -a(i, j) : a(i, j);
      t_(i, n_ + i) = Rational(1);
      t_(i, rhs()) = sign_[i] < 0 ? -b(i) : b(i);
      basis_[i] = n_ + i;
    }
  }

  Eigen::Index rhs() const { return n_ + m_; }
  Eigen::Index obj() const { return m_; }

  // Phase one: minimize the sum of artificials. Returns the optimal value.
  Rational phase_one() {
    for (Eigen::Index j = 0; j <= rhs(); ++j) {
      Rational s(0);
      if (j < n_ || j == rhs()) {
        for (Eigen::Index i = 0; i < m_; ++i) s -= t_(i, j);
      }
      t_(obj(), j) = s;
    }
    run(rhs());
    return -t_(obj(), rhs());
  }

  // Multipliers y of phase one, in the caller's (unflipped) row orientation.
  RationalVector phase_one_farkas() const {
    RationalVector w(m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      // reduced cost of artificial i is 1 - y_i; witness is -y, unflipped.
      Rational y = Rational(1) - t_(obj(), n_ + i);
      w(i) = sign_[i] < 0 ? y : -y;
    }
    return w;
  }

  void drive_out_artificials() {
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (!t_(i, j).is_zero()) {
          pivot(i, j);
          break;
        }
      }
      // A row with no structural entry is redundant; its artificial stays at zero.
    }
  }

  bool phase_two(const RationalVector& c) {
    for (Eigen::Index j = 0; j <= rhs(); ++j) {
      Rational s = (j < n_) ? c(j) : Rational(0);
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (basis_[i] < n_) s -= c(basis_[i]) * t_(i, j);
      }
      t_(obj(), j) = s;
    }
    return run(n_);
  }

  RationalVector solution() const {
    RationalVector x = RationalVector::Constant(n_, Rational(0));
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x(basis_[i]) = t_(i, rhs());
    }
    return x;
  }

 private:
  // Bland's rule over columns [0, limit). Returns false if unbounded.
  bool run(Eigen::Index limit) {
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < limit; ++j) {
        if (t_(obj(), j).sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      Rational best;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (t_(i, enter).sign() <= 0) continue;
        Rational ratio = t_(i, rhs()) / t_(i, enter);
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const Rational inv = Rational(1) / t_(row, col);
    for (Eigen::Index j = 0; j <= rhs(); ++j) t_(row, j) *= inv;
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == row || t_(i, col).is_zero()) continue;
      const Rational f = t_(i, col);
      for (Eigen::Index j = 0; j <= rhs(); ++j) {
        if (!t_(row, j).is_zero()) t_(i, j) -= f * t_(row, j);
      }
    }
    basis_[row] = col;
  }

  Eigen::Index m_;
  Eigen::Index n_;
  RationalMatrix t_;
  std::vector<Eigen::Index> basis_;
  std::vector<int> sign_;
};

}  // namespace

LpResult solve_lp(const RationalMatrix& a, const RationalVector& b, const RationalVector& c) {
  if (b.size() != a.rows() || c.size() != a.cols()) throw DimensionError("solve_lp: shape mismatch");
  LpResult result;
  if (a.rows() == 0) {
    result.status = LpStatus::kOptimal;
    result.x = RationalVector::Constant(a.cols(), Rational(0));
    result.objective = Rational(0);
    for (Eigen::Index j = 0; j < c.size(); ++j) {
      if (c(j).sign() < 0) result.status = LpStatus::kUnbounded;
    }
    return result;
  }
  Tableau tab(a, b);
  if (tab.phase_one().sign() > 0) {
    result.status = LpStatus::kInfeasible;
    result.farkas = tab.phase_one_farkas();
    return result;
  }
  tab.drive_out_artificials();
  if (!tab.phase_two(c)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.x = tab.solution();
  result.objective = Rational(0);
  for (Eigen::Index j = 0; j < c.size(); ++j) result.objective += c(j) * result.x(j);
  return result;
}

}  // namespace einext
