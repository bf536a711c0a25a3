#include "einext/solver.hpp"

#include "einext/curvature.hpp"
#include "einext/errors.hpp"

#include <unsupported/Eigen/LevenbergMarquardt>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

namespace einext {

namespace {

std::vector<AffineRational> affine(const SpectralVector& p) {
  std::vector<AffineRational> out;
  for (Eigen::Index i = 0; i < p.size(); ++i) out.emplace_back(p[i]);
  return out;
}

// Layout and constants shared by every evaluation for one spectrum.
class ResidualModel {
 public:
  ResidualModel(const SpectralVector& p, double jacobi_weight)
      : p_(p), layout_(affine(p)), weight_(jacobi_weight), pd_(p.values()) {
    const int n = static_cast<int>(p.size());
    order_.resize(layout_.keys().size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::sort(order_.begin(), order_.end(),
              [&](std::size_t a, std::size_t b) { return layout_.keys()[a] < layout_.keys()[b]; });
    target_ = Eigen::VectorXd(n);
    const double tr = p.trace().to_double();
    const double tr2 = p.trace_of_square().to_double();
    for (int i = 0; i < n; ++i) target_(i) = tr * pd_(i) - tr2;
  }

  Eigen::VectorXd operator()(const StructureTensor& mu) const {
    const int n = static_cast<int>(p_.size());
    if (mu.dim() != n) throw DimensionError("residual_vector: dimension mismatch");
    const auto mats = layout_.accumulate(mu);
    const auto jac = jacobi_components(mu);
    const int pairs = n * (n + 1) / 2;
    Eigen::VectorXd r(static_cast<Eigen::Index>(order_.size()) * pairs + n + static_cast<Eigen::Index>(jac.size()));
    Eigen::Index at = 0;
    for (std::size_t slot : order_) {
      const bool constant = slot == layout_.constant_class();
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double v = mats[slot](i, j);
          if (constant && i == j) v -= target_(i);
          r(at++) = v;
        }
    }
    // divergence: sum_j mu_{ij|j} (p_i - p_j)
    Eigen::VectorXd div = Eigen::VectorXd::Zero(n);
    for (const auto& [key, v] : mu.entries()) {
      if (key[2] == key[1]) div(key[0]) += v * (pd_(key[0]) - pd_(key[1]));
      if (key[2] == key[0]) div(key[1]) -= v * (pd_(key[1]) - pd_(key[0]));
    }
    for (int i = 0; i < n; ++i) r(at++) = div(i);
    for (double c : jac) r(at++) = weight_ * c;
    return r;
  }

 private:
  SpectralVector p_;
  RicciLayout layout_;
  double weight_;
  Eigen::VectorXd pd_;
  Eigen::VectorXd target_;
  std::vector<std::size_t> order_;
};

Eigen::MatrixXd central_jacobian(const ResidualModel& model, const std::vector<Triple>& pattern,
                                 const Eigen::VectorXd& x, int n) {
  Eigen::MatrixXd jac;
  Eigen::VectorXd xp = x;
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    const double h = 1e-6 * std::max(1.0, std::abs(x(c)));
    xp(c) = x(c) + h;
    const Eigen::VectorXd plus = model(tensor_from(pattern, xp, n));
    xp(c) = x(c) - h;
    const Eigen::VectorXd minus = model(tensor_from(pattern, xp, n));
    xp(c) = x(c);
    if (c == 0) jac.resize(plus.size(), x.size());
    jac.col(c) = (plus - minus) / (2.0 * h);
  }
  return jac;
}

}  // namespace

Eigen::VectorXd residual_vector(const StructureTensor& mu, const SpectralVector& p, double jacobi_weight) {
  return ResidualModel(p, jacobi_weight)(mu);
}

double objective(const StructureTensor& mu, const SpectralVector& p, double jacobi_weight) {
  return 0.5 * residual_vector(mu, p, jacobi_weight).squaredNorm();
}

std::vector<Triple> full_pattern(int n) {
  std::vector<Triple> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) out.push_back({i, j, k});
  return out;
}

StructureTensor tensor_from(const std::vector<Triple>& pattern, const Eigen::VectorXd& x, int n) {
  StructureTensor mu(n);
  for (std::size_t a = 0; a < pattern.size(); ++a) {
    mu.set(pattern[a][0], pattern[a][1], pattern[a][2], x(static_cast<Eigen::Index>(a)));
  }
  return mu;
}

Eigen::MatrixXd residual_jacobian(const std::vector<Triple>& pattern, const Eigen::VectorXd& x,
                                  const SpectralVector& p, double jacobi_weight) {
  return central_jacobian(ResidualModel(p, jacobi_weight), pattern, x, static_cast<int>(p.size()));
}

namespace {

struct ResidualFunctor : Eigen::DenseFunctor<double> {
  ResidualFunctor(const ResidualModel& model, const std::vector<Triple>& pattern, int n, int values)
      : Eigen::DenseFunctor<double>(static_cast<int>(pattern.size()), values), model(model), pattern(pattern), n(n) {}

  // MINPACK wants at least as many residuals as unknowns; pad with zeros.
  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fvec) const {
    const Eigen::VectorXd r = model(tensor_from(pattern, x, n));
    fvec = Eigen::VectorXd::Zero(values());
    fvec.head(r.size()) = r;
    ++evaluations;
    return 0;
  }

  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& fjac) const {
    const Eigen::MatrixXd j = central_jacobian(model, pattern, x, n);
    fjac = Eigen::MatrixXd::Zero(values(), inputs());
    fjac.topRows(j.rows()) = j;
    return 0;
  }

  const ResidualModel& model;
  const std::vector<Triple>& pattern;
  int n;
  mutable int evaluations = 0;
};

}  // namespace

SearchResult search(const SearchProblem& problem) {
  if (problem.restarts < 1) throw PreconditionError("restarts must be >= 1");
  if (problem.max_iterations < 1) throw PreconditionError("max_iterations must be >= 1");
  if (!(problem.bound > 0.0)) throw PreconditionError("bound must be positive");
  const SpectralVector& p = problem.spectral;
  const int n = static_cast<int>(p.size());
  const std::vector<Triple> pattern = problem.pattern ? *problem.pattern : sparsity_pattern(p);
  for (const auto& t : pattern) {
    if (t[0] < 0 || t[1] >= n || t[0] >= t[1] || t[2] < 0 || t[2] >= n) {
      throw PreconditionError("pattern entry outside the triple set");
    }
  }

  const ResidualModel model(p, problem.jacobi_weight);
  SearchResult result;
  result.best_mu = StructureTensor(n);
  const double at_origin = model(StructureTensor(n)).norm();
  if (pattern.empty()) {
    result.residual = at_origin;
    result.converged = at_origin <= problem.tolerance;
    result.message = result.converged ? "empty pattern, target already met at mu = 0"
                                      : "empty pattern with a non-flat target; nothing to search";
    return result;
  }

  const auto residual_size = model(StructureTensor(n)).size();
  const int values = static_cast<int>(std::max<Eigen::Index>(residual_size, static_cast<Eigen::Index>(pattern.size())));

  std::mt19937_64 rng(problem.seed);
  std::uniform_real_distribution<double> draw(-problem.bound, problem.bound);
  const auto dim = static_cast<Eigen::Index>(pattern.size());

  std::tuple<double, double, std::vector<double>> best_key{std::numeric_limits<double>::infinity(), 0.0, {}};
  for (int restart = 0; restart < problem.restarts; ++restart) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    if (restart > 0) {
      for (Eigen::Index a = 0; a < dim; ++a) x(a) = draw(rng);
    }
    ResidualFunctor f(model, pattern, n, values);
    RestartSummary summary;
    summary.index = restart;
    summary.start_residual = model(tensor_from(pattern, x, n)).norm();

    if (summary.start_residual > 0.0) {
      Eigen::LevenbergMarquardt<ResidualFunctor> lm(f);
      lm.setMaxfev(problem.max_iterations * (static_cast<int>(dim) + 1));
      lm.setFtol(1e-15);
      lm.setXtol(1e-15);
      lm.setGtol(0.0);
      // stop well inside the tolerance instead of polishing to machine precision
      const double good_enough = 1e-2 * problem.tolerance;
      if (lm.minimizeInit(x) != Eigen::LevenbergMarquardtSpace::ImproperInputParameters) {
        Eigen::LevenbergMarquardtSpace::Status status;
        do {
          status = lm.minimizeOneStep(x);
        } while (status == Eigen::LevenbergMarquardtSpace::Running && !(lm.fnorm() <= good_enough));
      }
    }
    const StructureTensor mu = tensor_from(pattern, x, n);
    summary.residual = model(mu).norm();
    summary.mu_norm = x.norm();
    summary.evaluations = f.evaluations;
    result.restarts.push_back(summary);

    std::tuple<double, double, std::vector<double>> key{summary.residual, summary.mu_norm,
                                                         std::vector<double>(x.data(), x.data() + x.size())};
    if (key < best_key) {
      best_key = std::move(key);
      result.best_mu = mu;
      result.residual = summary.residual;
    }
  }
  result.converged = result.residual <= problem.tolerance;
  result.message = result.converged ? "converged" : "no restart reached the tolerance";
  return result;
}

}  // namespace einext
