#include "einext/verifier.hpp"

#include "einext/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace einext {

double VerificationReport::max_residual() const {
  double r = 0.0;
  for (const auto& [name, v] : residuals) r = std::max(r, v);
  return r;
}

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Eigen::MatrixXd einstein_target(const ExtensionSpec& spec) {
  const int n = spec.dim();
  const double tr = spec.trace().to_double();
  const double tr2 = spec.trace_of_square().to_double();
  const Eigen::VectorXd p = spec.p();
  Eigen::MatrixXd target = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) target(i, i) = tr * p(i) - tr2;
  return target;
}

}  // namespace

VerificationReport verify_extension(const ExtensionSpec& spec, double tol) {
  if (!spec.constant_frame) throw RefusalError("verify_extension refuses non-constant frame data");
  if (static_cast<int>(spec.eigenvalues.size()) != spec.dim()) throw DimensionError("spectral length mismatch");

  VerificationReport report;
  report.tolerance = tol;
  const Eigen::MatrixXd target = einstein_target(spec);

  const Eigen::VectorXd div = divergence_residual(spec);
  report.residuals["divergence"] = div.size() ? div.cwiseAbs().maxCoeff() : 0.0;

  const GroupedRicci grouped = ricci_deformation(spec).collapse(spec.parameter);
  const AffineRational zero;
  report.residuals["target"] = max_abs(grouped.coefficient(zero) - target);
  for (const auto& [q, c] : grouped.classes()) {
    if (q == zero) continue;
    report.residuals["exponent:" + to_string(q)] = max_abs(c);
  }

  double grid = 0.0;
  for (double u : kVerifyGrid) grid = std::max(grid, max_abs(ricci_direct(spec, u) - target));
  report.residuals["u_grid"] = grid;

  if (spec.algebra.lie_algebra) report.residuals["jacobi"] = jacobi_residual(spec.algebra);

  for (const auto& [name, v] : report.residuals) {
    if (!(v <= tol)) report.violated_conditions.push_back(name);
  }
  report.einstein = report.violated_conditions.empty();
  if (report.einstein) report.einstein_constant = 0.0 - spec.trace_of_square().to_double();
  return report;
}

bool scalar_case_check(const ExtensionSpec& spec, double tol) {
  if (!verify_extension(spec, tol).einstein) {
    throw PreconditionError("scalar_case_check needs a spec that passes verification");
  }
  const RationalVector p = spec.exact_eigenvalues();
  bool scalar = true;
  for (Eigen::Index i = 1; i < p.size(); ++i) scalar = scalar && p(i) == p(0);
  const bool flat = max_abs(ricci_direct(spec, 0.0)) <= tol;
  return scalar == flat;
}

std::optional<Triple> relation_exists(const SpectralVector& p) {
  const int n = static_cast<int>(p.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k) {
        if (p[k] == p[i] + p[j]) return Triple{i, j, k};
      }
    }
  return std::nullopt;
}

std::vector<Triple> sparsity_pattern(const SpectralVector& p) {
  const int n = static_cast<int>(p.size());
  std::vector<Triple> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Rational s = p[i] + p[j] - p[k];
        bool allowed = s.is_zero();
        for (int m = 0; m < n && !allowed; ++m) allowed = s == p[m];
        if (allowed) out.push_back({i, j, k});
      }
  return out;
}

ExtensionSpec permute(const ExtensionSpec& spec, const std::vector<int>& frame) {
  const int n = spec.dim();
  if (static_cast<int>(frame.size()) != n) throw DimensionError("permutation length mismatch");
  std::vector<int> inverse(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    const int old = frame[static_cast<std::size_t>(a)];
    if (old < 0 || old >= n || inverse[static_cast<std::size_t>(old)] >= 0) throw PreconditionError("not a permutation");
    inverse[static_cast<std::size_t>(old)] = a;
  }
  StructureTensor mu(n);
  mu.lie_algebra = spec.algebra.lie_algebra;
  for (const auto& [key, v] : spec.algebra.entries()) {
    mu.set(inverse[static_cast<std::size_t>(key[0])], inverse[static_cast<std::size_t>(key[1])],
           inverse[static_cast<std::size_t>(key[2])], v);
  }
  std::vector<AffineRational> p(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) p[static_cast<std::size_t>(a)] = spec.eigenvalues[static_cast<std::size_t>(frame[static_cast<std::size_t>(a)])];
  ExtensionSpec out(std::move(mu), std::move(p), spec.parameter);
  out.constant_frame = spec.constant_frame;
  if (spec.decomposition) {
    OrthogonalDecomposition d;
    for (int h : spec.decomposition->h) d.h.push_back(inverse[static_cast<std::size_t>(h)]);
    for (int m : spec.decomposition->m) d.m.push_back(inverse[static_cast<std::size_t>(m)]);
    out.decomposition = d;
  }
  return out;
}

namespace {

// Frame with every eigenvalue equal to `bulk` first and the single `special` one last.
std::vector<int> match_type(const ExtensionSpec& spec, const Rational& bulk, const Rational& special,
                            const std::string& type) {
  const int n = spec.dim();
  if (!spec.constant_frame) throw RefusalError("classifier refuses non-constant frame data");
  const RationalVector p = spec.exact_eigenvalues();
  std::vector<int> frame;
  int special_index = -1;
  bool ok = n >= 2;
  for (int i = 0; i < n && ok; ++i) {
    if (p(i) == bulk) {
      frame.push_back(i);
    } else if (p(i) == special && special_index < 0) {
      special_index = i;
    } else {
      ok = false;
    }
  }
  if (!ok || special_index < 0) {
    std::string got;
    for (int i = 0; i < n; ++i) got += (i ? "," : "") + to_string(p(i));
    throw RefusalError("classifier " + type + " needs eigenvalues (" + to_string(bulk) + ",...," + to_string(bulk) +
                       "," + to_string(special) + ") exactly; got (" + got + ")");
  }
  frame.push_back(special_index);
  return frame;
}

void record(ClassifierReport& r, const std::string& name, double value, double tol) {
  r.checks[name] = value;
  if (!(value <= tol)) r.failures.push_back(name);
}

ExtensionSpec leading_block(const ExtensionSpec& spec, int size) {
  StructureTensor mu(size);
  mu.lie_algebra = spec.algebra.lie_algebra;
  for (const auto& [key, v] : spec.algebra.entries()) {
    if (key[0] < size && key[1] < size && key[2] < size) mu.set(key[0], key[1], key[2], v);
  }
  std::vector<AffineRational> p(spec.eigenvalues.begin(), spec.eigenvalues.begin() + size);
  return ExtensionSpec(std::move(mu), std::move(p), spec.parameter);
}

void finish(ClassifierReport& r, const std::string& pass_text, const std::string& fail_text) {
  r.passed = r.failures.empty();
  r.verdict = r.passed ? pass_text : fail_text;
}

}  // namespace

ClassifierReport classify_type_0001(const ExtensionSpec& spec, double tol) {
  ClassifierReport r;
  r.type = "0001";
  r.frame = match_type(spec, Rational(0), Rational(1), r.type);
  const ExtensionSpec s = permute(spec, r.frame);
  const int n = s.dim();
  const int z = n - 1;

  double touching = 0.0;
  for (const auto& [key, v] : s.algebra.entries()) {
    if (key[0] == z || key[1] == z || key[2] == z) touching = std::max(touching, std::abs(v));
  }
  record(r, "mu touching the distinguished index", touching, tol);

  const ExtensionSpec block = leading_block(s, n - 1);
  const Eigen::MatrixXd ric = ricci_direct(block, 0.0);
  record(r, "block Ricci + identity", max_abs(ric + Eigen::MatrixXd::Identity(n - 1, n - 1)), tol);
  finish(r, "product of an Einstein (constant -1) block with the hyperbolic plane",
         "not a product with an Einstein (constant -1) block");
  return r;
}

ClassifierReport classify_type_1110(const ExtensionSpec& spec, double tol) {
  ClassifierReport r;
  r.type = "1110";
  r.frame = match_type(spec, Rational(1), Rational(0), r.type);
  const ExtensionSpec s = permute(spec, r.frame);
  const int n = s.dim();
  const int z = n - 1;
  const auto& mu = s.algebra;

  double sn = 0.0;
  for (int k = 0; k < n; ++k) sn += mu(k, z, k);
  record(r, "S_n", std::abs(sn), tol);

  double ideal = 0.0;
  for (int i = 0; i < z; ++i)
    for (int j = 0; j < z; ++j) ideal = std::max(ideal, std::abs(mu(i, j, z)));
  record(r, "mu_{ij|n}", ideal, tol);

  Eigen::MatrixXd m(z, z);
  for (int i = 0; i < z; ++i)
    for (int j = 0; j < z; ++j) m(i, j) = mu(z, i, j);
  const Eigen::MatrixXd skew = (m - m.transpose()) / 2.0;
  const double skew_norm = max_abs(skew);
  r.checks["skew part of (mu_{ni|j})"] = skew_norm;
  if (skew_norm > tol) {
    // A constant orthogonal change of frame keeps the skew part skew, so it cannot be gauged away.
    r.gauge_obstruction = true;
    r.failures.push_back("gauge obstruction");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig((m + m.transpose()) / 2.0);
  r.spectrum = eig.eigenvalues();
  record(r, "Tr D'", std::abs(r.spectrum.sum()), tol);
  record(r, "Tr D'^2 - (n-1)", std::abs(r.spectrum.squaredNorm() - static_cast<double>(n - 1)), tol);

  const ExtensionSpec block = leading_block(s, n - 1);
  record(r, "block Ricci", max_abs(ricci_direct(block, 0.0)), tol);
  finish(r, "Ricci-flat hypersurface extended by D' with Tr D' = 0 and Tr D'^2 = n-1",
         "conditions for type (1,...,1,0) not met");
  return r;
}

ClassifierReport classify_type_1112(const ExtensionSpec& spec, double tol) {
  ClassifierReport r;
  r.type = "1112";
  r.frame = match_type(spec, Rational(1), Rational(2), r.type);
  const ExtensionSpec s = permute(spec, r.frame);
  const int n = s.dim();
  const int z = n - 1;
  const auto& mu = s.algebra;

  double sn = 0.0;
  for (int k = 0; k < n; ++k) sn += mu(k, z, k);
  record(r, "S_n", std::abs(sn), tol);

  double inn = 0.0;
  for (int i = 0; i < z; ++i) inn = std::max(inn, std::abs(mu(i, z, z)));
  record(r, "mu_{in|n}", inn, tol);

  double nkl = 0.0;
  for (int k = 0; k < z; ++k)
    for (int l = 0; l < z; ++l) nkl = std::max(nkl, std::abs(mu(z, k, l)));
  record(r, "mu_{nk|l}", nkl, tol);

  double contact = 0.0;
  for (int i = 0; i < z; ++i) {
    double s2 = 0.0;
    for (int k = 0; k < z; ++k) s2 += mu(i, k, z) * mu(i, k, z);
    contact = std::max(contact, std::abs(s2 - 4.0));
  }
  record(r, "sum_k mu_{ik|n}^2 - 4", contact, tol);

  Eigen::VectorXd expected = Eigen::VectorXd::Constant(n, -2.0);
  expected(z) = static_cast<double>(n - 1);
  record(r, "Ric at u=0 - diag(-2,...,-2,n-1)", max_abs(ricci_direct(s, 0.0) - Eigen::MatrixXd(expected.asDiagonal())), tol);
  finish(r, "K-contact eta-Einstein structure certificate holds", "conditions for type (1,...,1,2) not met");
  return r;
}

ClassifierReport classify(const ExtensionSpec& spec, double tol) {
  const RationalVector p = spec.exact_eigenvalues();
  std::vector<Rational> sorted(p.data(), p.data() + p.size());
  std::sort(sorted.begin(), sorted.end());
  const auto n = sorted.size();
  if (n >= 2) {
    const bool leading_same = std::all_of(sorted.begin(), sorted.end() - 1, [&](const Rational& x) { return x == sorted[0]; });
    const bool trailing_same = std::all_of(sorted.begin() + 1, sorted.end(), [&](const Rational& x) { return x == sorted[1]; });
    if (leading_same && sorted[0] == Rational(0) && sorted[n - 1] == Rational(1)) return classify_type_0001(spec, tol);
    if (trailing_same && sorted[0] == Rational(0) && sorted[1] == Rational(1)) return classify_type_1110(spec, tol);
    if (leading_same && sorted[0] == Rational(1) && sorted[n - 1] == Rational(2)) return classify_type_1112(spec, tol);
  }
  throw RefusalError("no classifier for this eigenvalue type; supported: (0,...,0,1), (1,...,1,0), (1,...,1,2)");
}

}  // namespace einext
