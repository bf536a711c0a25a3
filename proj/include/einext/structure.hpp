#pragma once

#include "einext/affine.hpp"
#include "einext/spectral.hpp"

#include <Eigen/Dense>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace einext {

inline constexpr double kJacobiTolerance = 1e-10;
inline constexpr double kSplitTolerance = 1e-10;

// Constants mu_{ij|k} = <[e_i, e_j], e_k> in an orthonormal frame.
// Indices are 0-based here; the JSON layer converts from 1-based.
class StructureTensor {
 public:
  using Key = std::array<int, 3>;  // (i, j, k) with i < j

  explicit StructureTensor(int dim = 0);

  int dim() const { return dim_; }

  // Stores mu_{ij|k} = v (and so mu_{ji|k} = -v). Zero values erase the entry.
  void set(int i, int j, int k, double v);
  double operator()(int i, int j, int k) const;

  const std::map<Key, double>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  // (ad_i)_{kl} = mu_{il|k}, the matrix of ad_{e_i} acting on column vectors.
  Eigen::MatrixXd ad(int i) const;

  // Flags the data as a Lie algebra, so Jacobi is enforced on validation.
  bool lie_algebra = true;

  friend bool operator==(const StructureTensor&, const StructureTensor&) = default;

 private:
  void check_index(int i) const;

  int dim_;
  std::map<Key, double> entries_;
};

// Dense n^3 copy, mu(i, j, k) with both orderings filled.
template <typename Scalar>
class BracketArray {
 public:
  explicit BracketArray(const StructureTensor& t)
      : n_(t.dim()), data_(static_cast<std::size_t>(n_ * n_ * n_), Scalar(0)) {
    for (const auto& [key, v] : t.entries()) {
      at(key[0], key[1], key[2]) = Scalar(v);
      at(key[1], key[0], key[2]) = -Scalar(v);
    }
  }
  int dim() const { return n_; }
  const Scalar& operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

 private:
  std::size_t index(int i, int j, int k) const { return static_cast<std::size_t>((i * n_ + j) * n_ + k); }
  Scalar& at(int i, int j, int k) { return data_[index(i, j, k)]; }

  int n_;
  std::vector<Scalar> data_;
};

struct OrthogonalDecomposition {
  std::vector<int> h;  // abelian part
  std::vector<int> m;  // nilpotent ideal
};

// Algebra plus the eigenvalues of D in the same frame.
// Eigenvalues are affine in one symbolic parameter t whose value is `parameter`.
struct ExtensionSpec {
  StructureTensor algebra;
  std::vector<AffineRational> eigenvalues;
  Rational parameter{0};
  bool constant_frame = true;  // false marks non-homogeneous frame data
  std::optional<OrthogonalDecomposition> decomposition;

  ExtensionSpec() = default;
  ExtensionSpec(StructureTensor mu, std::vector<AffineRational> p, Rational theta = Rational(0));

  int dim() const { return algebra.dim(); }
  bool has_parameter() const;

  Rational eigenvalue(int i) const { return eigenvalues[static_cast<std::size_t>(i)].evaluate(parameter); }
  RationalVector exact_eigenvalues() const;
  Eigen::VectorXd p() const { return to_double(exact_eigenvalues()); }
  SpectralVector spectral() const;  // needs dim >= 2

  Rational trace() const;
  Rational trace_of_square() const;
};

ExtensionSpec make_spec(StructureTensor mu, const std::vector<Rational>& p);

// Throws on dimension mismatch, bad decomposition indices, or Jacobi failure of a flagged Lie algebra.
void validate(const ExtensionSpec& spec, double jacobi_tol = kJacobiTolerance);

// Cyclic sums J_{ijk|l} for i<j<k and every l, in that order.
std::vector<double> jacobi_components(const StructureTensor& mu);
double jacobi_residual(const StructureTensor& mu);

struct DerivationCheck {
  bool ok = false;
  double max_violation = 0.0;
};

// max |(p_k - p_i - p_j) mu_{ij|k}|
DerivationCheck is_derivation(const ExtensionSpec& spec, double tol = kJacobiTolerance);

Eigen::MatrixXd killing_form(const StructureTensor& mu);

// H_i = Tr ad_i
Eigen::VectorXd mean_curvature(const StructureTensor& mu);

// Component i: sum_j mu_{ij|j} (p_i - p_j)
Eigen::VectorXd divergence_residual(const ExtensionSpec& spec);

// Matrices act on m, in the order of decomposition.m.
struct QNSplit {
  std::map<int, Eigen::MatrixXd> t;  // h-index with p = 0
  std::map<int, Eigen::MatrixXd> q;  // h-index with p != 0, skew block-diagonal part
  std::map<int, Eigen::MatrixXd> n;  // h-index with p != 0, shifting part
  std::vector<std::string> violations;
  double q_skew_defect = 0.0;

  bool ok() const { return violations.empty(); }
};

QNSplit qn_split(const ExtensionSpec& spec, const OrthogonalDecomposition& decomp, double tol = kSplitTolerance);

// Replaces ad_b on m by N_b for every b in h with p_b != 0.
// Throws RefusalError naming the offending pair when the split fails or the families do not commute.
StructureTensor standard_modification(const ExtensionSpec& spec, const OrthogonalDecomposition& decomp,
                                      double tol = kSplitTolerance);

}  // namespace einext
