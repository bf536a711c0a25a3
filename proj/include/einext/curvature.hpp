#pragma once

#include "einext/affine.hpp"
#include "einext/structure.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <vector>

namespace einext {

/*
 * Sum over exponent classes: M(u) = sum_q exp(-2 u q) C_q.
 *
 * Keys are exact and affine in the symbolic parameter t. Distinct symbolic keys
 * can coincide at a particular parameter value; collapse() merges them.
 */
class GroupedMatrix {
 public:
  explicit GroupedMatrix(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }
  void add(const AffineRational& q, int i, int j, double v);
  void set(const AffineRational& q, Eigen::MatrixXd c) { classes_[q] = std::move(c); }
  const std::map<AffineRational, Eigen::MatrixXd>& classes() const { return classes_; }
  Eigen::MatrixXd coefficient(const AffineRational& q) const;

  Eigen::MatrixXd evaluate(double u, const Rational& theta = Rational(0)) const;
  GroupedMatrix collapse(const Rational& theta) const;
  std::map<AffineRational, double> traces() const;

  // Removes classes whose entries are all within tol of zero.
  void prune(double tol = 0.0);

 private:
  int dim_;
  std::map<AffineRational, Eigen::MatrixXd> classes_;
};

using GroupedRicci = GroupedMatrix;
using GroupedScalar = std::map<AffineRational, double>;

double evaluate(const GroupedScalar& s, double u, const Rational& theta = Rational(0));
GroupedScalar collapse(const GroupedScalar& s, const Rational& theta);

// Gamma^i_{jk}(u) stored at (i, j, k).
class ConnectionCoefficients {
 public:
  explicit ConnectionCoefficients(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n), 0.0) {}
  int dim() const { return n_; }
  double& operator()(int i, int j, int k) { return data_[static_cast<std::size_t>((i * n_ + j) * n_ + k)]; }
  double operator()(int i, int j, int k) const { return data_[static_cast<std::size_t>((i * n_ + j) * n_ + k)]; }

 private:
  int n_;
  std::vector<double> data_;
};

ConnectionCoefficients connection_coeffs(const ExtensionSpec& spec, double u);

/*
 * Exponent bookkeeping for Ric^u, resolved once per spectrum.
 *
 * Every term of the constant-data formula is assigned the index of its class
 * in keys(); accumulate() then fills one dense matrix per class with no
 * rational arithmetic, which is what the solver's inner loop needs.
 */
class RicciLayout {
 public:
  explicit RicciLayout(const std::vector<AffineRational>& p);

  int dim() const { return n_; }
  const std::vector<AffineRational>& keys() const { return keys_; }
  std::size_t constant_class() const { return zero_; }

  // One n x n matrix per key, in keys() order.
  std::vector<Eigen::MatrixXd> accumulate(const StructureTensor& mu) const;

 private:
  std::size_t slot(const AffineRational& q);
  int at2(int i, int j) const { return i * n_ + j; }
  int at3(int i, int j, int l) const { return (i * n_ + j) * n_ + l; }
  int at4(int i, int j, int k, int l) const { return ((i * n_ + j) * n_ + k) * n_ + l; }

  int n_;
  std::vector<AffineRational> keys_;
  std::map<AffineRational, std::size_t> index_;
  std::size_t zero_ = 0;
  std::vector<std::size_t> killing_, trace_ji_, trace_ij_, cubic_, quartic_;
};

// Throws RefusalError for specs flagged as non-constant frame data.
GroupedRicci ricci_deformation(const ExtensionSpec& spec);

// Computed from its own double sum, not by tracing ricci_deformation.
GroupedScalar scalar_deformation(const ExtensionSpec& spec);

/*
 * Ric^u at a single u, term by term with the exponentials applied in place.
 * Used to cross-check the grouped representation.
 */
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> ricci_direct(const BracketArray<Scalar>& mu,
                                                                   const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& p,
                                                                   Scalar u) {
  using std::exp;
  const int n = mu.dim();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> h = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k) h(l) += mu(l, k, k);

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> ric(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar killing(0);
      Scalar t3(0);
      Scalar t4(0);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          killing += mu(j, k, l) * mu(i, l, k);
          t3 += exp(-Scalar(2) * u * (p(l) + p(k))) * mu(k, l, i) * mu(k, l, j);
          t4 += exp(Scalar(2) * u * (p(l) - p(k))) * mu(i, k, l) * mu(j, k, l);
        }
      Scalar t2(0);
      for (int l = 0; l < n; ++l) {
        t2 += exp(u * (p(i) - p(j) - Scalar(2) * p(l))) * mu(l, j, i) * h(l);
        t2 += exp(u * (p(j) - p(i) - Scalar(2) * p(l))) * mu(l, i, j) * h(l);
      }
      ric(i, j) = -exp(-u * (p(i) + p(j))) * killing / Scalar(2) - t2 / Scalar(2) +
                  exp(u * (p(i) + p(j))) * t3 / Scalar(4) - exp(-u * (p(i) + p(j))) * t4 / Scalar(2);
    }
  return ric;
}

Eigen::MatrixXd ricci_direct(const ExtensionSpec& spec, double u);

struct CurvatureReport {
  GroupedRicci ric_u;
  GroupedScalar scal_terms;
  // (n+1)-dimensional Ricci of du^2 + g^u; index 0 is the u direction.
  GroupedMatrix extension;
};

CurvatureReport extension_ricci(const ExtensionSpec& spec);

}  // namespace einext
