#include <doctest.h>

#include "einext/catalog.hpp"
#include "einext/errors.hpp"
#include "einext/verifier.hpp"
#include "oracles.hpp"

#include <random>

using namespace einext;

namespace {

StructureTensor heis(double v) {
  StructureTensor mu(3);
  mu.set(0, 1, 2, v);
  return mu;
}

SpectralVector sv(std::initializer_list<long> v) {
  RationalVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (long x : v) out(i++) = Rational(x);
  return SpectralVector(out);
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Random orthogonal change of frame inside each eigenspace of D; keeps D diagonal.
ExtensionSpec rotate_eigenspaces(const ExtensionSpec& spec, std::mt19937_64& rng) {
  const int n = spec.dim();
  const RationalVector p = spec.exact_eigenvalues();
  std::normal_distribution<double> normal;
  Eigen::MatrixXd o = Eigen::MatrixXd::Zero(n, n);
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    if (done[static_cast<std::size_t>(i)]) continue;
    std::vector<int> block;
    for (int j = i; j < n; ++j)
      if (p(j) == p(i)) block.push_back(j);
    const auto b = static_cast<Eigen::Index>(block.size());
    Eigen::MatrixXd g(b, b);
    for (Eigen::Index r = 0; r < b; ++r)
      for (Eigen::Index c = 0; c < b; ++c) g(r, c) = normal(rng);
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
    for (Eigen::Index r = 0; r < b; ++r)
      for (Eigen::Index c = 0; c < b; ++c) o(block[r], block[c]) = q(r, c);
    for (int j : block) done[static_cast<std::size_t>(j)] = true;
  }
  const BracketArray<double> mu(spec.algebra);
  StructureTensor out(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double v = 0.0;
        for (const auto& [key, m] : spec.algebra.entries()) {
          const int i = key[0], j = key[1], k = key[2];
          v += m * (o(i, a) * o(j, b) - o(j, a) * o(i, b)) * o(k, c);
        }
        if (std::abs(v) > 1e-15) out.set(a, b, c, v);
      }
  ExtensionSpec r = spec;
  r.algebra = out;
  return r;
}

bool grouped_pass(const VerificationReport& r) {
  for (const auto& [name, v] : r.residuals) {
    if ((name == "target" || name.rfind("exponent:", 0) == 0) && !(v <= r.tolerance)) return false;
  }
  return true;
}

std::vector<ExtensionSpec> passing_specs() {
  std::vector<ExtensionSpec> out;
  for (const auto& e : catalog_entries())
    if (e.expect_einstein) out.push_back(e.spec);
  for (int t : {-3, -1, 0, 2, 5}) out.push_back(table1(4, Rational(t)).spec);
  out.push_back(product(make_spec(hyperbolic_plane(), {0, 0}), make_spec(abelian(1), {1})));
  return out;
}

}  // namespace

TEST_CASE("verify_extension examples") {
  const auto h = verify_extension(make_spec(heis(2.0), {1, 1, 2}));
  CHECK(h.einstein);
  REQUIRE(h.einstein_constant);
  CHECK(*h.einstein_constant == doctest::Approx(-6.0));
  CHECK(h.max_residual() <= 1e-12);

  const auto a = verify_extension(make_spec(abelian(3), {1, 1, 1}));
  CHECK(a.einstein);
  CHECK(*a.einstein_constant == doctest::Approx(-3.0));

  const auto bad = verify_extension(make_spec(heis(1.0), {1, 1, 2}));
  CHECK_FALSE(bad.einstein);
  CHECK_FALSE(bad.einstein_constant);
  CHECK(bad.residuals.at("target") == doctest::Approx(1.5));
  CHECK_FALSE(bad.violated_conditions.empty());

  const auto flat = verify_extension(make_spec(abelian(3), {0, 0, 0}));
  CHECK(flat.einstein);
  CHECK(*flat.einstein_constant == 0.0);
  CHECK_FALSE(std::signbit(*flat.einstein_constant));

  ExtensionSpec nc = make_spec(heis(2.0), {1, 1, 2});
  nc.constant_frame = false;
  CHECK_THROWS_AS(verify_extension(nc), RefusalError);
}

TEST_CASE("verify_extension reports divergence and exponent classes") {
  StructureTensor mu(3);
  mu.set(0, 1, 1, 1.0);
  const auto r = verify_extension(make_spec(mu, {2, 1, 1}));
  CHECK_FALSE(r.einstein);
  CHECK(r.residuals.at("divergence") == doctest::Approx(1.0));

  // e(2): Ricci-flat for equal scales on the rotated plane, u-dependent otherwise
  const auto e2 = verify_extension(make_spec(e2_algebra(), {1, 1, 1}));
  CHECK(e2.einstein);
  const auto e2s = verify_extension(make_spec(e2_algebra(), {1, 2, 1}));
  CHECK_FALSE(e2s.einstein);
  bool has_exponent = false;
  for (const auto& [name, v] : e2s.residuals) has_exponent = has_exponent || (name.rfind("exponent:", 0) == 0 && v > 1e-9);
  CHECK(has_exponent);
}

TEST_CASE("scalar case check") {
  CHECK(scalar_case_check(make_spec(abelian(3), {1, 1, 1})));
  CHECK(scalar_case_check(make_spec(e2_algebra(), {1, 1, 1})));
  CHECK(scalar_case_check(make_spec(heis(2.0), {1, 1, 2})));
  CHECK_THROWS_AS(scalar_case_check(make_spec(heis(1.0), {1, 1, 2})), PreconditionError);
}

TEST_CASE("relation_exists") {
  const auto a = relation_exists(sv({1, 1, 2}));
  REQUIRE(a);
  CHECK(*a == Triple{0, 1, 2});
  CHECK_FALSE(relation_exists(sv({1, 1, 1})));
  const auto b = relation_exists(sv({1, 2, 3, 4}));
  REQUIRE(b);
  CHECK(*b == Triple{0, 1, 2});
  // i != j: (1,2) does not count 1 + 1 = 2
  CHECK_FALSE(relation_exists(sv({1, 2})));
}

TEST_CASE("sparsity pattern") {
  // brute force over all i < j, k
  auto brute = [](const SpectralVector& p) {
    std::vector<Triple> out;
    const int n = static_cast<int>(p.size());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const Rational d = p[i] + p[j] - p[k];
          bool hit = d.is_zero();
          for (int l = 0; l < n; ++l) hit = hit || d == p[l];
          if (hit) out.push_back({i, j, k});
        }
    return out;
  };
  for (const auto& p : {sv({1, 1, 2}), sv({1, 1, 1}), sv({3, 5}), sv({1, 2, 3, 4}), sv({0, 0, 1})})
    CHECK(sparsity_pattern(p) == brute(p));
  CHECK(sparsity_pattern(sv({1, 1, 1})).size() == 9);
  // n = 2: every triple has k in {i, j}
  for (const auto& t : sparsity_pattern(sv({2, 7}))) CHECK((t[2] == t[0] || t[2] == t[1]));
  const auto p112 = sparsity_pattern(sv({1, 1, 2}));
  CHECK(std::find(p112.begin(), p112.end(), Triple{0, 1, 2}) != p112.end());
}

TEST_CASE("classifier 0001") {
  StructureTensor mu(3);
  mu.set(0, 1, 1, -1.0);
  const auto ok = classify_type_0001(make_spec(mu, {0, 0, 1}));
  CHECK(ok.passed);
  CHECK(ok.frame == std::vector<int>{0, 1, 2});
  CHECK_FALSE(classify_type_0001(make_spec(abelian(3), {0, 0, 1})).passed);
  CHECK_FALSE(classify_type_0001(make_spec(heis(2.0), {0, 0, 1})).passed);

  // distinguished index first: relabeled to last
  StructureTensor moved(3);
  moved.set(1, 2, 2, -1.0);
  const auto m = classify_type_0001(make_spec(moved, {1, 0, 0}));
  CHECK(m.passed);
  CHECK(m.frame.back() == 0);

  CHECK_THROWS_AS(classify_type_0001(make_spec(mu, {0, 0, 2})), RefusalError);
  CHECK_THROWS_AS(classify_type_0001(make_spec(mu, {1, 1, 2})), RefusalError);
}

TEST_CASE("classifier 1110") {
  StructureTensor mu(3);
  mu.set(2, 0, 0, 1.0);
  mu.set(2, 1, 1, -1.0);
  const auto r = classify_type_1110(make_spec(mu, {1, 1, 0}));
  CHECK(r.passed);
  REQUIRE(r.spectrum.size() == 2);
  CHECK(r.spectrum(0) == doctest::Approx(-1.0));
  CHECK(r.spectrum(1) == doctest::Approx(1.0));

  const auto a = classify_type_1110(make_spec(abelian(3), {1, 1, 0}));
  CHECK_FALSE(a.passed);
  CHECK(a.checks.at("Tr D'^2 - (n-1)") == doctest::Approx(2.0));

  // symmetric off-diagonal part is gauged by the eigenframe
  StructureTensor sym(3);
  sym.set(2, 0, 1, 1.0);
  sym.set(2, 1, 0, 1.0);
  CHECK(classify_type_1110(make_spec(sym, {1, 1, 0})).passed);

  StructureTensor skew(3);
  skew.set(2, 0, 0, 1.0);
  skew.set(2, 1, 1, -1.0);
  skew.set(2, 0, 1, 0.5);
  const auto s = classify_type_1110(make_spec(skew, {1, 1, 0}));
  CHECK_FALSE(s.passed);
  CHECK(s.gauge_obstruction);

  CHECK_THROWS_AS(classify_type_1110(make_spec(mu, {2, 2, 0})), RefusalError);
}

TEST_CASE("classifier 1112") {
  CHECK(classify_type_1112(make_spec(heis(2.0), {1, 1, 2})).passed);
  const auto h5 = classify_type_1112(heisenberg(2).spec);
  CHECK(h5.passed);
  CHECK(std::abs(ricci_direct(heisenberg(2).spec, 0.0)(4, 4) - 4.0) < 1e-12);
  const auto weak = classify_type_1112(make_spec(heis(1.0), {1, 1, 2}));
  CHECK_FALSE(weak.passed);
  CHECK(weak.checks.at("sum_k mu_{ik|n}^2 - 4") == doctest::Approx(3.0));
  CHECK_THROWS_AS(classify_type_1112(make_spec(heis(2.0), {2, 2, 4})), RefusalError);
}

TEST_CASE("classify picks the type") {
  CHECK(classify(make_spec(heis(2.0), {1, 1, 2})).type == "1112");
  CHECK(classify(make_spec(abelian(3), {1, 1, 0})).type == "1110");
  CHECK(classify(make_spec(abelian(3), {0, 1, 0})).type == "0001");
  CHECK_THROWS_AS(classify(make_spec(abelian(3), {1, 2, 3})), RefusalError);
}

TEST_CASE("1112 certificate implies verification on the Heisenberg family") {
  for (int k = 1; k <= 4; ++k) {
    const ExtensionSpec s = heisenberg(k).spec;
    REQUIRE(classify_type_1112(s).passed);
    CHECK(verify_extension(s).einstein);
  }
}

TEST_CASE("properties of passing specs survive eigenspace rotations") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (const ExtensionSpec& base : passing_specs()) {
    for (int rep = 0; rep < 5; ++rep) {
      const ExtensionSpec s = rep == 0 ? base : rotate_eigenspaces(base, rng);
      const auto r = verify_extension(s);
      REQUIRE(r.einstein);
      ++checked;
      const SpectralVector p(s.exact_eigenvalues());
      bool scalar = true;
      for (Eigen::Index i = 1; i < p.size(); ++i) scalar = scalar && p[i] == p[0];
      if (!scalar) CHECK(relation_exists(p).has_value());

      const auto allowed = sparsity_pattern(p);
      for (const auto& [key, v] : s.algebra.entries()) {
        if (std::find(allowed.begin(), allowed.end(), Triple{key[0], key[1], key[2]}) == allowed.end())
          CHECK(std::abs(v) <= 1e-10);
      }

      const auto ext = extension_ricci(s).extension;
      const double c = -s.trace_of_square().to_double();
      for (double u : kVerifyGrid)
        CHECK(max_abs(ext.evaluate(u, s.parameter) - c * Eigen::MatrixXd::Identity(s.dim() + 1, s.dim() + 1)) < 1e-10);
    }
  }
  CHECK(checked > 40);
}

TEST_CASE("grouped check and u-grid check agree") {
  std::mt19937_64 rng(18);
  const auto passing = passing_specs();
  int agree = 0;
  int einstein = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    ExtensionSpec s;
    if (trial % 4 == 0) {
      s = rotate_eigenspaces(passing[static_cast<std::size_t>(trial / 4) % passing.size()], rng);
    } else {
      std::uniform_int_distribution<int> dim(2, 5);
      const auto r = oracle::random_spec(rng, dim(rng));
      s = make_spec(r.mu, r.p);
    }
    const auto r = verify_extension(s);
    const bool grid = r.residuals.at("u_grid") <= r.tolerance;
    if (grouped_pass(r) == grid) ++agree;
    if (r.einstein) ++einstein;
  }
  CHECK(agree == 1000);
  CHECK(einstein >= 250);
}

TEST_CASE("permute relabels consistently") {
  const ExtensionSpec s = heisenberg(1).spec;
  const ExtensionSpec t = permute(s, {2, 0, 1});
  CHECK(t.eigenvalue(0) == Rational(2));
  CHECK(t.algebra(1, 2, 0) == doctest::Approx(2.0));
  CHECK(verify_extension(t).einstein);
}
