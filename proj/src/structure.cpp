#include "einext/structure.hpp"

#include "einext/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace einext {

StructureTensor::StructureTensor(int dim) : dim_(dim) {
  if (dim < 0) throw DimensionError("negative dimension");
}

void StructureTensor::check_index(int i) const {
  if (i < 0 || i >= dim_) {
    throw DimensionError("index " + std::to_string(i + 1) + " out of range for dimension " + std::to_string(dim_));
  }
}

void StructureTensor::set(int i, int j, int k, double v) {
  check_index(i);
  check_index(j);
  check_index(k);
  if (!std::isfinite(v)) throw PreconditionError("structure constant must be finite");
  if (i == j) {
    if (v != 0.0) throw PreconditionError("mu_{ii|k} must vanish by antisymmetry");
    return;
  }
  if (i > j) {
    std::swap(i, j);
    v = -v;
  }
  if (v == 0.0) {
    entries_.erase({i, j, k});
  } else {
    entries_[{i, j, k}] = v;
  }
}

double StructureTensor::operator()(int i, int j, int k) const {
  if (i == j) return 0.0;
  const double sign = i < j ? 1.0 : -1.0;
  const auto it = entries_.find({std::min(i, j), std::max(i, j), k});
  return it == entries_.end() ? 0.0 : sign * it->second;
}

Eigen::MatrixXd StructureTensor::ad(int i) const {
  check_index(i);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim_, dim_);
  for (const auto& [key, v] : entries_) {
    // mu_{il|k} lands at (k, l)
    if (key[0] == i) a(key[2], key[1]) += v;
    if (key[1] == i) a(key[2], key[0]) -= v;
  }
  return a;
}

ExtensionSpec::ExtensionSpec(StructureTensor mu, std::vector<AffineRational> p, Rational theta)
    : algebra(std::move(mu)), eigenvalues(std::move(p)), parameter(std::move(theta)) {
  if (static_cast<int>(eigenvalues.size()) != algebra.dim()) {
    throw DimensionError("spectral length " + std::to_string(eigenvalues.size()) + " does not match dimension " +
                         std::to_string(algebra.dim()));
  }
}

bool ExtensionSpec::has_parameter() const {
  return std::any_of(eigenvalues.begin(), eigenvalues.end(), [](const auto& e) { return !e.is_constant(); });
}

RationalVector ExtensionSpec::exact_eigenvalues() const {
  RationalVector out(static_cast<Eigen::Index>(eigenvalues.size()));
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) out(static_cast<Eigen::Index>(i)) = eigenvalues[i].evaluate(parameter);
  return out;
}

SpectralVector ExtensionSpec::spectral() const { return SpectralVector(exact_eigenvalues()); }

Rational ExtensionSpec::trace() const {
  Rational s(0);
  for (const auto& e : eigenvalues) s += e.evaluate(parameter);
  return s;
}

Rational ExtensionSpec::trace_of_square() const {
  Rational s(0);
  for (const auto& e : eigenvalues) {
    const Rational v = e.evaluate(parameter);
    s += v * v;
  }
  return s;
}

ExtensionSpec make_spec(StructureTensor mu, const std::vector<Rational>& p) {
  std::vector<AffineRational> ev(p.begin(), p.end());
  return ExtensionSpec(std::move(mu), std::move(ev));
}

namespace {

std::string label(int i) { return std::to_string(i + 1); }

void validate_decomposition(const ExtensionSpec& spec, const OrthogonalDecomposition& d, double tol) {
  const int n = spec.dim();
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (int idx : d.h) {
    if (idx < 0 || idx >= n) throw PreconditionError("decomposition index " + label(idx) + " out of range");
    ++seen[static_cast<std::size_t>(idx)];
  }
  for (int idx : d.m) {
    if (idx < 0 || idx >= n) throw PreconditionError("decomposition index " + label(idx) + " out of range");
    ++seen[static_cast<std::size_t>(idx)];
  }
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)] != 1) {
      throw PreconditionError("decomposition does not partition the frame at index " + label(i));
    }
  }
  const auto& mu = spec.algebra;
  std::vector<bool> in_h(static_cast<std::size_t>(n), false);
  for (int a : d.h) in_h[static_cast<std::size_t>(a)] = true;
  for (const auto& [key, v] : mu.entries()) {
    if (std::abs(v) <= tol) continue;
    const bool hi = in_h[static_cast<std::size_t>(key[0])];
    const bool hj = in_h[static_cast<std::size_t>(key[1])];
    const bool hk = in_h[static_cast<std::size_t>(key[2])];
    const std::string name = "mu_{" + label(key[0]) + label(key[1]) + "|" + label(key[2]) + "}";
    if (hi && hj) throw PreconditionError("h is not abelian: " + name + " != 0");
    if (!hi && !hj && hk) throw PreconditionError("m is not orthogonal to h: " + name + " != 0");
    if (hi != hj && hk) throw PreconditionError("m is not an ideal: " + name + " != 0");
  }
  // Engel: ad_k restricted to m nilpotent for k in m
  const auto msize = static_cast<Eigen::Index>(d.m.size());
  for (int k : d.m) {
    const Eigen::MatrixXd full = mu.ad(k);
    Eigen::MatrixXd block(msize, msize);
    for (Eigen::Index r = 0; r < msize; ++r)
      for (Eigen::Index c = 0; c < msize; ++c) block(r, c) = full(d.m[static_cast<std::size_t>(r)], d.m[static_cast<std::size_t>(c)]);
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(msize, msize);
    for (Eigen::Index s = 0; s < msize; ++s) power = power * block;
    if (msize > 0 && power.cwiseAbs().maxCoeff() > tol) {
      throw PreconditionError("m is not nilpotent: ad_" + label(k) + " restricted to m is not nilpotent");
    }
  }
}

}  // namespace

void validate(const ExtensionSpec& spec, double jacobi_tol) {
  if (static_cast<int>(spec.eigenvalues.size()) != spec.dim()) {
    throw DimensionError("spectral length does not match dimension");
  }
  if (spec.algebra.lie_algebra) {
    const double r = jacobi_residual(spec.algebra);
    if (r > jacobi_tol) {
      std::ostringstream os;
      os << "Jacobi identity fails (residual " << r << ")";
      throw PreconditionError(os.str());
    }
  }
  if (spec.decomposition) validate_decomposition(spec, *spec.decomposition, kSplitTolerance);
}

std::vector<double> jacobi_components(const StructureTensor& mu) {
  const int n = mu.dim();
  const BracketArray<double> b(mu);
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) {
            s += b(i, j, m) * b(m, k, l) + b(j, k, m) * b(m, i, l) + b(k, i, m) * b(m, j, l);
          }
          out.push_back(s);
        }
  return out;
}

double jacobi_residual(const StructureTensor& mu) {
  double r = 0.0;
  for (double c : jacobi_components(mu)) r = std::max(r, std::abs(c));
  return r;
}

DerivationCheck is_derivation(const ExtensionSpec& spec, double tol) {
  if (static_cast<int>(spec.eigenvalues.size()) != spec.dim()) throw DimensionError("spectral length mismatch");
  const Eigen::VectorXd p = spec.p();
  DerivationCheck out;
  for (const auto& [key, v] : spec.algebra.entries()) {
    out.max_violation = std::max(out.max_violation, std::abs((p(key[2]) - p(key[0]) - p(key[1])) * v));
  }
  out.ok = out.max_violation <= tol;
  return out;
}

Eigen::MatrixXd killing_form(const StructureTensor& mu) {
  const int n = mu.dim();
  const BracketArray<double> b(mu);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s += b(j, k, l) * b(i, l, k);
      out(i, j) = s;
    }
  return (out + out.transpose()) / 2.0;
}

Eigen::VectorXd mean_curvature(const StructureTensor& mu) {
  Eigen::VectorXd h = Eigen::VectorXd::Zero(mu.dim());
  for (const auto& [key, v] : mu.entries()) {
    if (key[2] == key[1]) h(key[0]) += v;   // mu_{ik|k} with i < k
    if (key[2] == key[0]) h(key[1]) -= v;   // mu_{ik|k} with k < i
  }
  return h;
}

Eigen::VectorXd divergence_residual(const ExtensionSpec& spec) {
  const Eigen::VectorXd p = spec.p();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(spec.dim());
  for (const auto& [key, v] : spec.algebra.entries()) {
    const int i = key[0];
    const int j = key[1];
    if (key[2] == j) out(i) += v * (p(i) - p(j));
    if (key[2] == i) out(j) += -v * (p(j) - p(i));
  }
  return out;
}

QNSplit qn_split(const ExtensionSpec& spec, const OrthogonalDecomposition& decomp, double tol) {
  validate_decomposition(spec, decomp, tol);
  const auto& mu = spec.algebra;
  const RationalVector p = spec.exact_eigenvalues();
  const auto msize = static_cast<Eigen::Index>(decomp.m.size());
  QNSplit out;

  auto entry_name = [](int a, int l, int k) {
    return "mu_{" + label(a) + label(l) + "|" + label(k) + "}";
  };

  for (int a : decomp.h) {
    Eigen::MatrixXd restricted(msize, msize);
    for (Eigen::Index r = 0; r < msize; ++r)
      for (Eigen::Index c = 0; c < msize; ++c)
        restricted(r, c) = mu(a, decomp.m[static_cast<std::size_t>(c)], decomp.m[static_cast<std::size_t>(r)]);

    if (p(a).is_zero()) {
      for (Eigen::Index r = 0; r < msize; ++r)
        for (Eigen::Index c = 0; c < msize; ++c) {
          const int k = decomp.m[static_cast<std::size_t>(r)];
          const int l = decomp.m[static_cast<std::size_t>(c)];
          if (std::abs(restricted(r, c)) > tol && p(k) != p(l)) {
            out.violations.push_back("T_" + label(a) + ": " + entry_name(a, l, k) + " != 0 with p_" + label(k) +
                                     " != p_" + label(l));
          }
        }
      out.t[a] = restricted;
      continue;
    }

    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(msize, msize);
    Eigen::MatrixXd nn = Eigen::MatrixXd::Zero(msize, msize);
    for (Eigen::Index r = 0; r < msize; ++r)
      for (Eigen::Index c = 0; c < msize; ++c) {
        const int k = decomp.m[static_cast<std::size_t>(r)];
        const int l = decomp.m[static_cast<std::size_t>(c)];
        const double v = restricted(r, c);
        if (p(k) == p(l)) {
          q(r, c) = v;
        } else if (p(k) == p(l) + p(a)) {
          nn(r, c) = v;
        } else if (std::abs(v) > tol) {
          out.violations.push_back("ad_" + label(a) + ": " + entry_name(a, l, k) + " fits neither Q nor N");
        }
      }
    const double defect = msize ? (q + q.transpose()).cwiseAbs().maxCoeff() : 0.0;
    out.q_skew_defect = std::max(out.q_skew_defect, defect);
    if (defect > tol) out.violations.push_back("Q_" + label(a) + " is not skew-symmetric");
    out.q[a] = q;
    out.n[a] = nn;
  }

  for (const auto& [key, v] : mu.entries()) {
    const bool all_m = std::find(decomp.m.begin(), decomp.m.end(), key[0]) != decomp.m.end() &&
                       std::find(decomp.m.begin(), decomp.m.end(), key[1]) != decomp.m.end();
    if (all_m && std::abs(v) > tol && p(key[2]) != p(key[0]) + p(key[1])) {
      out.violations.push_back("D restricted to m is not a derivation at " + entry_name(key[0], key[1], key[2]));
    }
  }
  return out;
}

StructureTensor standard_modification(const ExtensionSpec& spec, const OrthogonalDecomposition& decomp, double tol) {
  const QNSplit split = qn_split(spec, decomp, tol);
  if (!split.ok()) throw RefusalError("standard modification refused: " + split.violations.front());

  std::vector<std::pair<std::string, const Eigen::MatrixXd*>> family;
  for (const auto& [a, m] : split.t) family.emplace_back("T_" + label(a), &m);
  for (const auto& [b, m] : split.q) family.emplace_back("Q_" + label(b), &m);
  for (const auto& [b, m] : split.n) family.emplace_back("N_" + label(b), &m);
  for (std::size_t x = 0; x < family.size(); ++x)
    for (std::size_t y = x + 1; y < family.size(); ++y) {
      const Eigen::MatrixXd& a = *family[x].second;
      const Eigen::MatrixXd& b = *family[y].second;
      if (a.size() == 0) continue;
      const double c = (a * b - b * a).cwiseAbs().maxCoeff();
      if (c > tol) {
        std::ostringstream os;
        os << "standard modification refused: " << family[x].first << " and " << family[y].first
           << " do not commute (max entry " << c << ")";
        throw RefusalError(os.str());
      }
    }

  StructureTensor out(spec.dim());
  out.lie_algebra = spec.algebra.lie_algebra;
  std::vector<bool> in_m(static_cast<std::size_t>(spec.dim()), false);
  for (int k : decomp.m) in_m[static_cast<std::size_t>(k)] = true;
  for (const auto& [key, v] : spec.algebra.entries()) {
    if (in_m[static_cast<std::size_t>(key[0])] && in_m[static_cast<std::size_t>(key[1])]) out.set(key[0], key[1], key[2], v);
  }
  auto install = [&](int a, const Eigen::MatrixXd& mat) {
    for (Eigen::Index r = 0; r < mat.rows(); ++r)
      for (Eigen::Index c = 0; c < mat.cols(); ++c) {
        if (mat(r, c) != 0.0) {
          out.set(a, decomp.m[static_cast<std::size_t>(c)], decomp.m[static_cast<std::size_t>(r)], mat(r, c));
        }
      }
  };
  for (const auto& [a, m] : split.t) install(a, m);
  for (const auto& [b, m] : split.n) install(b, m);

  const double jac = jacobi_residual(out);
  ExtensionSpec modified = spec;
  modified.algebra = out;
  const DerivationCheck der = is_derivation(modified, tol);
  if (jac > kJacobiTolerance || !der.ok) {
    std::ostringstream os;
    os << "standard modification produced invalid output (Jacobi " << jac << ", derivation violation "
       << der.max_violation << ")";
    throw RefusalError(os.str());
  }
  return out;
}

}  // namespace einext
