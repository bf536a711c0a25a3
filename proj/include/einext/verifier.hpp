#pragma once

#include "einext/curvature.hpp"
#include "einext/structure.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace einext {

inline constexpr double kVerifyTolerance = 1e-9;

// (i, j, k), 0-based, i < j unless stated otherwise.
using Triple = std::array<int, 3>;

struct VerificationReport {
  bool einstein = false;
  std::optional<double> einstein_constant;  // -Tr D^2, only when passing
  double tolerance = kVerifyTolerance;
  // "divergence", "target", "u_grid", "jacobi" (Lie algebras only) and one
  // "exponent:<q>" per nonconstant class of the collapsed grouping.
  std::map<std::string, double> residuals;
  std::vector<std::string> violated_conditions;

  double max_residual() const;
};

// u values for the direct-evaluation cross-check
inline constexpr std::array<double, 6> kVerifyGrid = {-1.0, -0.5, 0.0, 0.5, 1.0, 2.0};

VerificationReport verify_extension(const ExtensionSpec& spec, double tol = kVerifyTolerance);

// Scalar p iff Ric at u = 0 vanishes. Throws PreconditionError on a failing spec.
bool scalar_case_check(const ExtensionSpec& spec, double tol = kVerifyTolerance);

// First (i, j, k) in lexicographic order with i != j and p_k = p_i + p_j.
std::optional<Triple> relation_exists(const SpectralVector& p);

// (i, j, k) with i < j and p_i + p_j - p_k in {0, p_1, ..., p_n}: the only entries allowed to be nonzero.
std::vector<Triple> sparsity_pattern(const SpectralVector& p);

struct ClassifierReport {
  std::string type;  // "0001", "1110", "1112"
  bool passed = false;
  std::vector<int> frame;                // old index of each new position; distinguished index last
  std::map<std::string, double> checks;  // named residuals
  std::vector<std::string> failures;
  bool gauge_obstruction = false;
  Eigen::VectorXd spectrum;  // D' eigenvalues for type 1110
  std::string verdict;
};

// Each classifier requires the exact eigenvalue multiset (no rescaling) and
// throws RefusalError otherwise.
ClassifierReport classify_type_0001(const ExtensionSpec& spec, double tol = kVerifyTolerance);
ClassifierReport classify_type_1110(const ExtensionSpec& spec, double tol = kVerifyTolerance);
ClassifierReport classify_type_1112(const ExtensionSpec& spec, double tol = kVerifyTolerance);

// Picks the classifier by eigenvalue multiset; RefusalError if none applies.
ClassifierReport classify(const ExtensionSpec& spec, double tol = kVerifyTolerance);

// Relabels the frame: new index a is old index frame[a].
ExtensionSpec permute(const ExtensionSpec& spec, const std::vector<int>& frame);

}  // namespace einext
