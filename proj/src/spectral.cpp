#include "einext/spectral.hpp"

#include "einext/errors.hpp"
#include "einext/exact_linalg.hpp"
#include "einext/simplex.hpp"

#include <algorithm>
#include <map>

namespace einext {

namespace {

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

RationalVector sorted(RationalVector v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

// Coprime integer multiple (positive factor) of v; v nonzero.
RationalVector primitive(const RationalVector& v) {
  Rational::BigInt lcm = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto d = v(i).denominator();
    lcm = lcm / gcd(lcm, d) * d;
  }
  Rational::BigInt g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Rational scaled = v(i) * Rational(lcm, 1);
    g = gcd(g, boost::multiprecision::abs(scaled.numerator()));
  }
  RationalVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i) * Rational(lcm, g);
  return out;
}

}  // namespace

SpectralVector::SpectralVector(RationalVector entries) : entries_(std::move(entries)) {
  if (entries_.size() < 2) throw DimensionError("spectral vector needs n >= 2 entries");
}

SpectralVector::SpectralVector(std::initializer_list<Rational> entries) {
  entries_.resize(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const auto& e : entries) entries_(i++) = e;
  if (entries_.size() < 2) throw DimensionError("spectral vector needs n >= 2 entries");
}

Rational SpectralVector::trace() const {
  Rational s(0);
  for (Eigen::Index i = 0; i < size(); ++i) s += entries_(i);
  return s;
}

Rational SpectralVector::trace_of_square() const { return dot(entries_, entries_); }

bool SpectralVector::is_scalar() const {
  for (Eigen::Index i = 1; i < size(); ++i) {
    if (entries_(i) != entries_(0)) return false;
  }
  return true;
}

bool SpectralVector::has_zero_entry() const {
  for (Eigen::Index i = 0; i < size(); ++i) {
    if (entries_(i).is_zero()) return true;
  }
  return false;
}

bool SpectralVector::is_zero() const {
  for (Eigen::Index i = 0; i < size(); ++i) {
    if (!entries_(i).is_zero()) return false;
  }
  return true;
}

SpectralVector SpectralVector::canonical() const {
  if (is_zero()) return *this;
  const RationalVector plus = sorted(primitive(entries_));
  const RationalVector minus = sorted(RationalVector(-primitive(entries_)));
  const int sum_sign = trace().sign();
  if (sum_sign > 0) return SpectralVector(plus);
  if (sum_sign < 0) return SpectralVector(minus);
  // Zero sum: the largest-magnitude entry must be positive.
  const Rational& plus_max = plus(plus.size() - 1);
  const Rational& minus_max = minus(minus.size() - 1);
  if (plus_max != minus_max) return SpectralVector(plus_max > minus_max ? plus : minus);
  const bool plus_first = std::lexicographical_compare(minus.data(), minus.data() + minus.size(),
                                                       plus.data(), plus.data() + plus.size());
  return SpectralVector(plus_first ? plus : minus);
}

bool operator==(const SpectralVector& a, const SpectralVector& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const SpectralVector& a, const SpectralVector& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string to_string(const SpectralVector& p) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += to_string(p[i]);
  }
  return out + ")";
}

std::vector<std::int64_t> RootTriple::coordinates(int n) const {
  std::vector<std::int64_t> v(static_cast<std::size_t>(n), 0);
  v[i] += 1;
  v[j] += 1;
  v[k] -= 1;
  return v;
}

std::string to_string(const RootTriple& v) {
  return "v_{" + std::to_string(v.i + 1) + std::to_string(v.j + 1) + "|" + std::to_string(v.k + 1) + "}";
}

RootMatrix::RootMatrix(int dim, std::vector<RootTriple> columns) : dim_(dim), columns_(std::move(columns)) {
  if (dim_ < 2) throw DimensionError("root matrix needs n >= 2");
  for (const auto& c : columns_) {
    if (c.i < 0 || c.j < 0 || c.k < 0 || c.i >= dim_ || c.j >= dim_ || c.k >= dim_ || c.i >= c.j ||
        c.k == c.i || c.k == c.j) {
      throw PreconditionError("invalid root triple " + to_string(c) + " for dimension " + std::to_string(dim_));
    }
  }
}

RationalMatrix RootMatrix::matrix() const {
  RationalMatrix v = RationalMatrix::Constant(dim_, cols(), Rational(0));
  for (Eigen::Index a = 0; a < cols(); ++a) {
    const auto coords = columns_[static_cast<std::size_t>(a)].coordinates(dim_);
    for (int r = 0; r < dim_; ++r) v(r, a) = Rational(coords[static_cast<std::size_t>(r)]);
  }
  return v;
}

bool RootMatrix::is_independent() const { return exact_rank(matrix()) == cols(); }

std::vector<RootTriple> build_root_set(int n) {
  if (n < 2) throw DimensionError("root set needs n >= 2, got " + std::to_string(n));
  std::vector<RootTriple> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (k != i && k != j) out.push_back({i, j, k});
      }
    }
  }
  return out;
}

std::vector<RootTriple> orthogonal_roots(const SpectralVector& p, std::span<const RootTriple> roots) {
  std::vector<RootTriple> out;
  for (const auto& v : roots) {
    if (v.k >= p.size() || v.j >= p.size()) throw DimensionError("root triple exceeds spectral dimension");
    if (v.dot(p).is_zero()) out.push_back(v);
  }
  return out;
}

RootMatrix maximal_independent_subset(int n, std::span<const RootTriple> roots) {
  IntegerSpan span(n);
  std::vector<RootTriple> chosen;
  for (const auto& v : roots) {
    if (span.add(v.coordinates(n))) chosen.push_back(v);
  }
  return RootMatrix(n, std::move(chosen));
}

RationalVector candidate_spectral_raw(const RootMatrix& v) {
  const int n = v.dim();
  RationalVector ones_n = RationalVector::Constant(n, Rational(1));
  if (v.cols() == 0) return ones_n;
  const RationalMatrix vm = v.matrix();
  if (exact_rank(vm) != vm.cols()) throw RankError("root matrix columns are linearly dependent");
  const RationalMatrix gram = vm.transpose() * vm;
  const RationalVector x = solve_exact(gram, RationalVector::Constant(vm.cols(), Rational(1)));
  return RationalVector(ones_n - vm * x);
}

SpectralVector candidate_spectral(const RootMatrix& v) {
  return SpectralVector(candidate_spectral_raw(v)).canonical();
}

std::vector<std::string> ConsistencyReport::failures() const {
  std::vector<std::string> out;
  if (!orthogonal) out.emplace_back("V^t p != 0");
  if (!nonzero_entries) out.emplace_back("det D = 0 (zero eigenvalue)");
  if (!nonzero_trace) out.emplace_back("Tr D = 0");
  if (!maximal) out.emplace_back("V does not span F cap p-perp");
  return out;
}

ConsistencyReport check_consistency(const SpectralVector& p, const RootMatrix& v,
                                    std::span<const RootTriple> roots) {
  if (p.size() != v.dim()) throw DimensionError("check_consistency: dimension mismatch");
  const int n = v.dim();
  ConsistencyReport report;
  report.orthogonal = std::all_of(v.columns().begin(), v.columns().end(),
                                  [&](const RootTriple& c) { return c.dot(p).is_zero(); });
  report.nonzero_entries = !p.has_zero_entry();
  report.trace = p.trace();
  report.nonzero_trace = !report.trace.is_zero();
  report.norm_squared = p.trace_of_square();

  const auto perp = orthogonal_roots(p, roots);
  IntegerSpan span(n);
  int rank_v = 0;
  for (const auto& c : v.columns()) rank_v += span.add(c.coordinates(n)) ? 1 : 0;
  bool all_in = true;
  for (const auto& f : perp) all_in = all_in && span.contains(f.coordinates(n));
  report.maximal = report.orthogonal && all_in;

  if (rank_v == v.cols()) {
    const RationalVector raw = candidate_spectral_raw(v);
    report.candidate_inner = dot(p.entries(), raw);
    const SpectralVector cand(raw);
    report.candidate_is_zero = cand.is_zero();
    report.reproduces_candidate = !report.candidate_is_zero && cand.canonical() == p.canonical();
  }
  return report;
}

bool ConeCertificate::verify() const {
  const Eigen::Index n = target.size();
  auto column = [&](std::size_t a) {
    const auto c = generators[a].coordinates(static_cast<int>(n));
    RationalVector out(n);
    for (Eigen::Index r = 0; r < n; ++r) out(r) = Rational(c[static_cast<std::size_t>(r)]);
    return out;
  };
  if (feasible) {
    if (coefficients.size() != static_cast<Eigen::Index>(generators.size())) return false;
    RationalVector sum = RationalVector::Constant(n, Rational(0));
    for (std::size_t a = 0; a < generators.size(); ++a) {
      const Rational& c = coefficients(static_cast<Eigen::Index>(a));
      if (c.sign() < 0) return false;
      sum += c * column(a);
    }
    return sum == target;
  }
  if (witness.size() != n) return false;
  for (std::size_t a = 0; a < generators.size(); ++a) {
    if (dot(witness, column(a)).sign() < 0) return false;
  }
  return dot(witness, target).sign() < 0;
}

ConeCertificate cone_membership(const SpectralVector& p, std::span<const RootTriple> roots) {
  if (p.has_zero_entry()) throw PreconditionError("cone_membership requires all eigenvalues nonzero");
  const Eigen::Index n = p.size();
  ConeCertificate cert;
  const Rational norm2 = p.trace_of_square();
  const Rational tr = p.trace();
  cert.target = RationalVector(n);
  for (Eigen::Index i = 0; i < n; ++i) cert.target(i) = norm2 - tr * p[i];
  cert.generators = orthogonal_roots(p, roots);

  const RootMatrix gens(static_cast<int>(n), cert.generators);
  const RationalMatrix a = gens.matrix();
  const RationalVector cost = RationalVector::Constant(a.cols(), Rational(1));
  const LpResult lp = solve_lp(a, cert.target, cost);
  if (lp.status == LpStatus::kInfeasible) {
    cert.feasible = false;
    cert.witness = lp.farkas;
  } else {
    // Costs are nonnegative, so a feasible program is never unbounded.
    cert.feasible = true;
    cert.coefficients = lp.x;
  }
  return cert;
}

namespace {

using Mask = std::vector<std::uint64_t>;

struct Flat {
  IntegerSpan span;
  std::vector<int> basis;
  Mask members;
};

bool test_bit(const Mask& m, std::size_t i) { return (m[i / 64] >> (i % 64)) & 1U; }
void set_bit(Mask& m, std::size_t i) { m[i / 64] |= std::uint64_t{1} << (i % 64); }

}  // namespace

EnumerationReport enumerate_report(int n, int cap) {
  if (n < 2) throw DimensionError("enumerate_types needs n >= 2, got " + std::to_string(n));
  if (n > cap) {
    throw DimensionError("enumerate_types refuses n = " + std::to_string(n) + " above the dimension cap " +
                         std::to_string(cap) + " (raise the cap explicitly)");
  }
  const auto roots = build_root_set(n);
  std::vector<std::vector<std::int64_t>> coords;
  coords.reserve(roots.size());
  for (const auto& r : roots) coords.push_back(r.coordinates(n));
  const std::size_t words = (roots.size() + 63) / 64 + 1;

  EnumerationReport report;
  report.dim = n;
  std::set<Mask> visited;
  std::vector<Flat> stack;
  stack.push_back(Flat{IntegerSpan(n), {}, Mask(words, 0)});
  visited.insert(stack.back().members);

  while (!stack.empty()) {
    Flat flat = std::move(stack.back());
    stack.pop_back();
    ++report.flats_visited;

    // Evaluate the projection of 1_n onto the orthogonal complement of the flat.
    std::vector<RootTriple> basis;
    for (int b : flat.basis) basis.push_back(roots[static_cast<std::size_t>(b)]);
    const RootMatrix v(n, basis);
    const SpectralVector raw(candidate_spectral_raw(v));
    if (!raw.is_zero() && !raw.has_zero_entry() && !raw.trace().is_zero()) {
      bool maximal = true;
      for (std::size_t r = 0; r < roots.size() && maximal; ++r) {
        if (roots[r].dot(raw).is_zero() && !test_bit(flat.members, r)) maximal = false;
      }
      if (maximal) report.unfiltered.insert(raw.canonical());
    }

    // Rank n - 1 flats already determine p up to scale; rank n would force p = 0.
    if (flat.span.rank() >= n - 1) continue;
    Mask covered = flat.members;
    for (std::size_t f = 0; f < roots.size(); ++f) {
      if (test_bit(covered, f)) continue;
      Flat child{flat.span, flat.basis, Mask(words, 0)};
      child.span.add(coords[f]);
      child.basis.push_back(static_cast<int>(f));
      for (std::size_t g = 0; g < roots.size(); ++g) {
        if (test_bit(flat.members, g) || g == f || child.span.contains(coords[g])) {
          set_bit(child.members, g);
          set_bit(covered, g);
        }
      }
      if (visited.insert(child.members).second) stack.push_back(std::move(child));
    }
  }

  const SpectralVector scalar(RationalVector::Constant(n, Rational(1)));
  report.unfiltered.insert(scalar);
  for (const auto& p : report.unfiltered) {
    if (cone_membership(p, roots).feasible) {
      report.filtered.insert(p);
    } else {
      report.cone_rejected.insert(p);
    }
  }
  return report;
}

std::set<SpectralVector> enumerate_types(int n, bool apply_cone_filter, int cap) {
  auto report = enumerate_report(n, cap);
  return apply_cone_filter ? report.filtered : report.unfiltered;
}

}  // namespace einext
