#pragma once

#include "einext/spectral.hpp"
#include "einext/structure.hpp"
#include "einext/verifier.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace einext {

struct SearchProblem {
  SpectralVector spectral{1, 1};
  std::optional<std::vector<Triple>> pattern;  // default: sparsity_pattern(spectral)
  double bound = 3.0;                          // starts drawn from [-bound, bound]
  int restarts = 8;
  std::uint64_t seed = 42;
  int max_iterations = 200;
  double tolerance = 1e-10;
  double jacobi_weight = 10.0;
};

struct RestartSummary {
  int index = 0;
  double start_residual = 0.0;
  double residual = 0.0;
  double mu_norm = 0.0;
  int evaluations = 0;
};

struct SearchResult {
  StructureTensor best_mu;
  double residual = 0.0;  // ||residual_vector(best_mu)||_2
  bool converged = false;
  std::vector<RestartSummary> restarts;
  std::string message;
};

/*
 * Fixed layout, for every possible exponent class q (ascending) and i <= j:
 * C_q(i,j) minus the target on the constant class; then the divergence
 * components; then the weighted Jacobi sums (i<j<k, l).
 */
Eigen::VectorXd residual_vector(const StructureTensor& mu, const SpectralVector& p, double jacobi_weight = 10.0);

double objective(const StructureTensor& mu, const SpectralVector& p, double jacobi_weight = 10.0);

std::vector<Triple> full_pattern(int n);

StructureTensor tensor_from(const std::vector<Triple>& pattern, const Eigen::VectorXd& x, int n);

// Central differences, step 1e-6 * max(1, |x_i|).
Eigen::MatrixXd residual_jacobian(const std::vector<Triple>& pattern, const Eigen::VectorXd& x,
                                  const SpectralVector& p, double jacobi_weight);

// Restart 0 starts at mu = 0; later restarts draw uniformly from the box.
SearchResult search(const SearchProblem& problem);

}  // namespace einext
