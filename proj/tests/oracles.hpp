#pragma once

// Independent reference computations used only by the tests.

#include "einext/exact_linalg.hpp"
#include "einext/structure.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using einext::Rational;
using einext::RationalMatrix;
using einext::RationalVector;

// c(a, b, d) = <[e_a, e_b], e_d>, dense, both orders filled.
struct Brackets {
  int n;
  std::vector<double> c;
  explicit Brackets(int dim) : n(dim), c(static_cast<std::size_t>(dim * dim * dim), 0.0) {}
  double& operator()(int a, int b, int d) { return c[static_cast<std::size_t>((a * n + b) * n + d)]; }
  double operator()(int a, int b, int d) const { return c[static_cast<std::size_t>((a * n + b) * n + d)]; }
};

// mu^u_{ij|k} = e^{u(p_k - p_i - p_j)} mu_{ij|k}: the brackets of the g^u-orthonormal frame.
inline Brackets deformed(const einext::StructureTensor& mu, const Eigen::VectorXd& p, double u) {
  const int n = mu.dim();
  Brackets b(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) b(i, j, k) = std::exp(u * (p(k) - p(i) - p(j))) * mu(i, j, k);
  return b;
}

// Ricci of a metric Lie algebra in an orthonormal basis, polarized.
inline Eigen::MatrixXd besse_ricci(const Brackets& c) {
  const int n = c.n;
  Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k) h(l) += c(l, k, k);
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          s += -0.5 * c(i, k, l) * c(j, k, l);
          s += -0.5 * c(i, l, k) * c(j, k, l);  // Killing form
          s += 0.25 * c(k, l, i) * c(k, l, j);
        }
      for (int l = 0; l < n; ++l) s += -0.5 * h(l) * (c(l, i, j) + c(l, j, i));
      ric(i, j) = s;
    }
  return ric;
}

// Brute force: Koszul connection, curvature operator, contraction.
inline Eigen::MatrixXd koszul_ricci(const Brackets& c) {
  const int n = c.n;
  auto gamma = [&](int a, int b, int d) { return 0.5 * (c(a, b, d) - c(b, d, a) + c(d, a, b)); };
  // nabla_a e_b as a vector
  std::vector<Eigen::VectorXd> nab(static_cast<std::size_t>(n * n), Eigen::VectorXd::Zero(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) nab[static_cast<std::size_t>(a * n + b)](d) = gamma(a, b, d);
  auto nabla = [&](int a, const Eigen::VectorXd& y) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int d = 0; d < n; ++d) out += y(d) * nab[static_cast<std::size_t>(a * n + d)];
    return out;
  };
  auto curvature = [&](int a, int b, int cc) {
    Eigen::VectorXd r = nabla(a, nab[static_cast<std::size_t>(b * n + cc)]) - nabla(b, nab[static_cast<std::size_t>(a * n + cc)]);
    for (int g = 0; g < n; ++g) r -= c(a, b, g) * nab[static_cast<std::size_t>(g * n + cc)];
    return r;
  };
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
  for (int b = 0; b < n; ++b)
    for (int cc = 0; cc < n; ++cc)
      for (int a = 0; a < n; ++a) ric(b, cc) += curvature(a, b, cc)(a);
  return ric;
}

/*
 * Ricci of du^2 + g^u at a given u in the frame (d/du, e_1(u), ..., e_n(u)).
 * Structure functions depend on u only, so d/du is the only frame field that
 * differentiates them.
 */
inline Eigen::MatrixXd extension_koszul_ricci(const einext::StructureTensor& mu, const Eigen::VectorXd& p, double u) {
  const int n = mu.dim();
  const int m = n + 1;
  Brackets c(m);
  Brackets dc(m);  // d/du of c
  for (int i = 0; i < n; ++i) {
    c(0, i + 1, i + 1) = -p(i);
    c(i + 1, 0, i + 1) = p(i);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double e = p(k) - p(i) - p(j);
        c(i + 1, j + 1, k + 1) = std::exp(u * e) * mu(i, j, k);
        dc(i + 1, j + 1, k + 1) = e * c(i + 1, j + 1, k + 1);
      }
  auto gamma = [](const Brackets& s, int a, int b, int d) { return 0.5 * (s(a, b, d) - s(b, d, a) + s(d, a, b)); };
  auto nab = [&](int a, int b) {
    Eigen::VectorXd v(m);
    for (int d = 0; d < m; ++d) v(d) = gamma(c, a, b, d);
    return v;
  };
  auto dnab = [&](int b, int cc) {
    Eigen::VectorXd v(m);
    for (int d = 0; d < m; ++d) v(d) = gamma(dc, b, cc, d);
    return v;
  };
  // nabla_a of the field sum_d y_d(u) e_d, with dy/du given
  auto nabla = [&](int a, const Eigen::VectorXd& y, const Eigen::VectorXd& dy) {
    Eigen::VectorXd out = a == 0 ? dy : Eigen::VectorXd(Eigen::VectorXd::Zero(m));
    for (int d = 0; d < m; ++d) out += y(d) * nab(a, d);
    return out;
  };
  auto curvature = [&](int a, int b, int cc) {
    Eigen::VectorXd r = nabla(a, nab(b, cc), dnab(b, cc)) - nabla(b, nab(a, cc), dnab(a, cc));
    for (int g = 0; g < m; ++g) r -= c(a, b, g) * nab(g, cc);
    return r;
  };
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(m, m);
  for (int b = 0; b < m; ++b)
    for (int cc = 0; cc < m; ++cc)
      for (int a = 0; a < m; ++a) ric(b, cc) += curvature(a, b, cc)(a);
  return ric;
}

inline Eigen::MatrixXd killing_by_trace(const einext::StructureTensor& mu) {
  const int n = mu.dim();
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = (mu.ad(i) * mu.ad(j)).trace();
  return b;
}

// Caratheodory: b is in the cone iff it is a nonnegative combination of some
// linearly independent subset of the generators.
inline bool cone_by_enumeration(const std::vector<RationalVector>& gens, const RationalVector& b) {
  if (b.isZero()) return true;
  const std::size_t m = gens.size();
  const Eigen::Index n = b.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t a = 0; a < m; ++a)
      if (mask >> a & 1U) cols.push_back(a);
    if (static_cast<Eigen::Index>(cols.size()) > n) continue;
    RationalMatrix s(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) s.col(static_cast<Eigen::Index>(c)) = gens[cols[c]];
    if (einext::exact_rank(s) != s.cols()) continue;
    const RationalMatrix st = s.transpose();
    const RationalVector x = einext::solve_exact(st * s, st * b);
    if (!(s * x == b)) continue;
    bool nonneg = true;
    for (Eigen::Index i = 0; i < x.size(); ++i) nonneg = nonneg && x(i).sign() >= 0;
    if (nonneg) return true;
  }
  return false;
}

struct RandomSpec {
  einext::StructureTensor mu;
  std::vector<Rational> p;
};

// Sparse bracket with entries in [-1, 1], no Jacobi identity. Fine for the
// identities that hold for any skew bracket.
inline RandomSpec random_bracket(std::mt19937_64& rng, int n, double density = 0.35) {
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> eig(-3, 3);
  RandomSpec out{einext::StructureTensor(n), {}};
  out.mu.lie_algebra = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (coin(rng) < density) out.mu.set(i, j, k, value(rng));
  for (int i = 0; i < n; ++i) out.p.emplace_back(eig(rng));
  return out;
}

/*
 * Random Lie algebra: one of R x_A R^{n-1}, Heisenberg + abelian, so(3) or
 * sl(2) + abelian, pushed through a random change of basis. Eigenvalues are
 * integers in [-3, 3] and have nothing to do with the brackets.
 */
inline RandomSpec random_spec(std::mt19937_64& rng, int n, double density = 0.35) {
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> eig(-3, 3);
  Brackets base(n);
  auto put = [&](int a, int b, int d, double v) {
    base(a, b, d) += v;
    base(b, a, d) -= v;
  };
  const int kinds = n >= 3 ? 3 : 1;
  const int kind = std::uniform_int_distribution<int>(0, kinds - 1)(rng);
  if (kind == 0) {
    for (int a = 1; a < n; ++a)
      for (int b = 1; b < n; ++b)
        if (coin(rng) < density + 0.3) put(0, b, a, value(rng));
  } else if (kind == 1) {
    put(0, 1, 2, value(rng));
  } else {
    const double sign = coin(rng) < 0.5 ? 1.0 : -1.0;
    put(0, 1, 2, 1.0);
    put(1, 2, 0, sign);
    put(2, 0, 1, sign);
  }
  // change of basis, sparse-ish so the exponent classes stay interesting
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && coin(rng) < density) g(a, b) = value(rng);
  const Eigen::MatrixXd gi = g.inverse();
  RandomSpec out{einext::StructureTensor(n), {}};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        double v = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            if (g(i, a) == 0.0 || g(j, b) == 0.0) continue;
            for (int k = 0; k < n; ++k) v += g(i, a) * g(j, b) * base(i, j, k) * gi(d, k);
          }
        if (std::abs(v) > 1e-14) out.mu.set(a, b, d, v);
      }
  for (int i = 0; i < n; ++i) out.p.emplace_back(eig(rng));
  return out;
}

}  // namespace oracle
