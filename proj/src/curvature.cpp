#include "einext/curvature.hpp"

#include "einext/errors.hpp"

namespace einext {

void GroupedMatrix::add(const AffineRational& q, int i, int j, double v) {
  auto it = classes_.find(q);
  if (it == classes_.end()) it = classes_.emplace(q, Eigen::MatrixXd::Zero(dim_, dim_)).first;
  it->second(i, j) += v;
}

Eigen::MatrixXd GroupedMatrix::coefficient(const AffineRational& q) const {
  const auto it = classes_.find(q);
  return it == classes_.end() ? Eigen::MatrixXd::Zero(dim_, dim_) : it->second;
}

Eigen::MatrixXd GroupedMatrix::evaluate(double u, const Rational& theta) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim_, dim_);
  for (const auto& [q, c] : classes_) out += std::exp(-2.0 * u * q.evaluate(theta).to_double()) * c;
  return out;
}

GroupedMatrix GroupedMatrix::collapse(const Rational& theta) const {
  GroupedMatrix out(dim_);
  for (const auto& [q, c] : classes_) {
    const AffineRational key(q.evaluate(theta));
    auto it = out.classes_.find(key);
    if (it == out.classes_.end()) {
      out.classes_.emplace(key, c);
    } else {
      it->second += c;
    }
  }
  return out;
}

std::map<AffineRational, double> GroupedMatrix::traces() const {
  std::map<AffineRational, double> out;
  for (const auto& [q, c] : classes_) out[q] = c.trace();
  return out;
}

void GroupedMatrix::prune(double tol) {
  for (auto it = classes_.begin(); it != classes_.end();) {
    if (it->second.size() == 0 || it->second.cwiseAbs().maxCoeff() <= tol) {
      it = classes_.erase(it);
    } else {
      ++it;
    }
  }
}

double evaluate(const GroupedScalar& s, double u, const Rational& theta) {
  double out = 0.0;
  for (const auto& [q, v] : s) out += std::exp(-2.0 * u * q.evaluate(theta).to_double()) * v;
  return out;
}

GroupedScalar collapse(const GroupedScalar& s, const Rational& theta) {
  GroupedScalar out;
  for (const auto& [q, v] : s) out[AffineRational(q.evaluate(theta))] += v;
  return out;
}

namespace {

void require_constant(const ExtensionSpec& spec) {
  if (!spec.constant_frame) {
    throw RefusalError("curvature formulas cover constant structure constants only; input is flagged non-constant");
  }
  if (static_cast<int>(spec.eigenvalues.size()) != spec.dim()) throw DimensionError("spectral length mismatch");
}

}  // namespace

ConnectionCoefficients connection_coeffs(const ExtensionSpec& spec, double u) {
  const int n = spec.dim();
  const Eigen::VectorXd p = spec.p();
  const BracketArray<double> mu(spec.algebra);
  ConnectionCoefficients g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        g(i, j, k) = 0.5 * std::exp(u * (p(k) - p(i) - p(j))) * mu(i, j, k) -
                     0.5 * std::exp(u * (p(i) - p(j) - p(k))) * mu(j, k, i) -
                     0.5 * std::exp(u * (p(j) - p(k) - p(i))) * mu(k, i, j);
      }
  return g;
}

// Term e^{uE} c is stored under q = -E/2.
RicciLayout::RicciLayout(const std::vector<AffineRational>& p) : n_(static_cast<int>(p.size())) {
  const Rational half(1, 2);
  const auto n = static_cast<std::size_t>(n_);
  zero_ = slot(AffineRational());
  killing_.resize(n * n);
  trace_ji_.resize(n * n * n);
  trace_ij_.resize(n * n * n);
  cubic_.resize(n * n * n * n);
  quartic_.resize(n * n * n * n);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      const AffineRational mid = half * (p[i] + p[j]);
      killing_[at2(i, j)] = slot(mid);
      for (int l = 0; l < n_; ++l) {
        trace_ji_[at3(i, j, l)] = slot(half * (p[j] - p[i]) + p[l]);
        trace_ij_[at3(i, j, l)] = slot(half * (p[i] - p[j]) + p[l]);
      }
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
          cubic_[at4(i, j, k, l)] = slot(p[k] + p[l] - mid);
          quartic_[at4(i, j, k, l)] = slot(mid + p[k] - p[l]);
        }
    }
}

std::size_t RicciLayout::slot(const AffineRational& q) {
  const auto [it, inserted] = index_.emplace(q, keys_.size());
  if (inserted) keys_.push_back(q);
  return it->second;
}

std::vector<Eigen::MatrixXd> RicciLayout::accumulate(const StructureTensor& tensor) const {
  if (tensor.dim() != n_) throw DimensionError("RicciLayout: dimension mismatch");
  const BracketArray<double> mu(tensor);
  const Eigen::MatrixXd b = killing_form(tensor);
  const Eigen::VectorXd h = mean_curvature(tensor);
  std::vector<Eigen::MatrixXd> out(keys_.size(), Eigen::MatrixXd::Zero(n_, n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (b(i, j) != 0.0) out[killing_[at2(i, j)]](i, j) += -0.5 * b(i, j);
      for (int l = 0; l < n_; ++l) {
        if (h(l) == 0.0) continue;
        if (mu(l, j, i) != 0.0) out[trace_ji_[at3(i, j, l)]](i, j) += -0.5 * mu(l, j, i) * h(l);
        if (mu(l, i, j) != 0.0) out[trace_ij_[at3(i, j, l)]](i, j) += -0.5 * mu(l, i, j) * h(l);
      }
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
          const double c3 = mu(k, l, i) * mu(k, l, j);
          if (c3 != 0.0) out[cubic_[at4(i, j, k, l)]](i, j) += 0.25 * c3;
          const double c4 = mu(i, k, l) * mu(j, k, l);
          if (c4 != 0.0) out[quartic_[at4(i, j, k, l)]](i, j) += -0.5 * c4;
        }
    }
  return out;
}

GroupedRicci ricci_deformation(const ExtensionSpec& spec) {
  require_constant(spec);
  const RicciLayout layout(spec.eigenvalues);
  const auto mats = layout.accumulate(spec.algebra);
  GroupedRicci ric(spec.dim());
  for (std::size_t a = 0; a < mats.size(); ++a) ric.set(layout.keys()[a], mats[a]);
  ric.prune();
  return ric;
}

GroupedScalar scalar_deformation(const ExtensionSpec& spec) {
  require_constant(spec);
  const int n = spec.dim();
  const auto& p = spec.eigenvalues;
  const BracketArray<double> mu(spec.algebra);
  GroupedScalar out;
  for (int k = 0; k < n; ++k) {
    double tr = 0.0;
    double bkk = 0.0;
    for (int i = 0; i < n; ++i) {
      tr += mu(k, i, i);
      for (int l = 0; l < n; ++l) bkk += mu(k, i, l) * mu(k, l, i);
    }
    const double c = -(tr * tr + 0.5 * bkk);
    if (c != 0.0) out[p[static_cast<std::size_t>(k)]] += c;
  }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        const double m = mu(k, l, i);
        if (m != 0.0) {
          out[p[static_cast<std::size_t>(k)] + p[static_cast<std::size_t>(l)] - p[static_cast<std::size_t>(i)]] +=
              -0.25 * m * m;
        }
      }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second == 0.0 ? out.erase(it) : std::next(it);
  }
  return out;
}

Eigen::MatrixXd ricci_direct(const ExtensionSpec& spec, double u) {
  require_constant(spec);
  return ricci_direct<double>(BracketArray<double>(spec.algebra), spec.p(), u);
}

CurvatureReport extension_ricci(const ExtensionSpec& spec) {
  CurvatureReport report;
  report.ric_u = ricci_deformation(spec);
  report.scal_terms = scalar_deformation(spec);

  const int n = spec.dim();
  const double tr = spec.trace().to_double();
  const Eigen::VectorXd p = spec.p();
  const Eigen::VectorXd div = divergence_residual(spec);
  GroupedMatrix ext(n + 1);
  ext.add(AffineRational(), 0, 0, -spec.trace_of_square().to_double());
  for (int i = 0; i < n; ++i) {
    // -e^{-u p_i} div_i, key p_i / 2. Sign checked against brute-force Koszul with e_0 = d/du.
    if (div(i) != 0.0) {
      const AffineRational key = Rational(1, 2) * spec.eigenvalues[static_cast<std::size_t>(i)];
      ext.add(key, 0, i + 1, -div(i));
      ext.add(key, i + 1, 0, -div(i));
    }
    if (p(i) != 0.0) ext.add(AffineRational(), i + 1, i + 1, -p(i) * tr);
  }
  for (const auto& [q, c] : report.ric_u.classes()) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (c(i, j) != 0.0) ext.add(q, i + 1, j + 1, c(i, j));
  }
  ext.prune();
  report.extension = ext;
  return report;
}

}  // namespace einext
