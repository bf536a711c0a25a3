#pragma once

#include "einext/rational.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace einext {

inline constexpr int kDefaultDimensionCap = 7;

// Eigenvalues p_1..p_n of D, exact. Order matters (it is the frame order);
// canonical() gives the representative used for type comparison.
class SpectralVector {
 public:
  explicit SpectralVector(RationalVector entries);
  SpectralVector(std::initializer_list<Rational> entries);

  Eigen::Index size() const { return entries_.size(); }
  const Rational& operator[](Eigen::Index i) const { return entries_(i); }
  const RationalVector& entries() const { return entries_; }

  Rational trace() const;
  Rational trace_of_square() const;
  bool is_scalar() const;
  bool has_zero_entry() const;
  bool is_zero() const;

  // Sorted nondecreasing, coprime integers (when nonzero), sign fixed so the
  // sum is positive; for zero sum the largest-magnitude entry is positive.
  SpectralVector canonical() const;
  bool is_canonical() const { return canonical() == *this; }

  Eigen::VectorXd values() const { return to_double(entries_); }

  friend bool operator==(const SpectralVector& a, const SpectralVector& b);
  friend std::strong_ordering operator<=>(const SpectralVector& a, const SpectralVector& b);

 private:
  RationalVector entries_;
};

std::string to_string(const SpectralVector& p);

// f_i + f_j - f_k with i < j and k not in {i, j}; 0-based indices.
struct RootTriple {
  int i = 0;
  int j = 0;
  int k = 0;

  std::vector<std::int64_t> coordinates(int n) const;
  Rational dot(const SpectralVector& p) const { return p[i] + p[j] - p[k]; }

  friend auto operator<=>(const RootTriple&, const RootTriple&) = default;
};

// "v_{12|3}" with 1-based labels.
std::string to_string(const RootTriple& v);

class RootMatrix {
 public:
  RootMatrix(int dim, std::vector<RootTriple> columns);

  int dim() const { return dim_; }
  Eigen::Index cols() const { return static_cast<Eigen::Index>(columns_.size()); }
  const std::vector<RootTriple>& columns() const { return columns_; }

  RationalMatrix matrix() const;
  bool is_independent() const;

 private:
  int dim_;
  std::vector<RootTriple> columns_;
};

// All C(n,2)*(n-2) root triples in lexicographic (i, j, k) order.
std::vector<RootTriple> build_root_set(int n);

// Roots orthogonal to p, in the order of `roots`.
std::vector<RootTriple> orthogonal_roots(const SpectralVector& p, std::span<const RootTriple> roots);

// Greedy maximal linearly independent subset, scanning `roots` in order.
RootMatrix maximal_independent_subset(int n, std::span<const RootTriple> roots);

// 1_n - V (V^t V)^{-1} 1_m, exact and un-normalized. Throws RankError if V is rank deficient.
RationalVector candidate_spectral_raw(const RootMatrix& v);

// candidate_spectral_raw followed by canonicalization.
SpectralVector candidate_spectral(const RootMatrix& v);

struct ConsistencyReport {
  bool orthogonal = false;       // V^t p = 0
  bool nonzero_entries = false;  // det D != 0
  bool nonzero_trace = false;    // Tr D != 0
  bool maximal = false;          // span V == span (F cap p-perp)
  Rational trace;
  Rational norm_squared;
  // <p, 1 - V(V^tV)^{-1} 1>; equals ||p||^2 / s whenever p = s * candidate.
  Rational candidate_inner;
  bool candidate_is_zero = false;
  bool reproduces_candidate = false;  // canonical(p) == canonical(candidate(V))

  bool ok() const { return orthogonal && nonzero_entries && nonzero_trace && maximal; }
  std::vector<std::string> failures() const;
};

ConsistencyReport check_consistency(const SpectralVector& p, const RootMatrix& v,
                                    std::span<const RootTriple> roots);

// Decides whether ||p||^2 1_n - <p,1_n> p lies in the cone spanned by F cap p-perp.
struct ConeCertificate {
  bool feasible = false;
  RationalVector target;
  std::vector<RootTriple> generators;
  RationalVector coefficients;  // aligned with generators, when feasible
  RationalVector witness;       // w . v >= 0 on generators, w . target < 0, when infeasible

  // Re-checks the certificate exactly against `generators` and `target`.
  bool verify() const;
};

ConeCertificate cone_membership(const SpectralVector& p, std::span<const RootTriple> roots);

struct EnumerationReport {
  int dim = 0;
  std::set<SpectralVector> unfiltered;
  std::set<SpectralVector> filtered;       // additionally passing cone_membership
  std::set<SpectralVector> cone_rejected;  // unfiltered minus filtered
  std::size_t flats_visited = 0;
};

// Throws DimensionError for n < 2 or n > cap.
EnumerationReport enumerate_report(int n, int cap = kDefaultDimensionCap);

std::set<SpectralVector> enumerate_types(int n, bool apply_cone_filter, int cap = kDefaultDimensionCap);

}  // namespace einext
