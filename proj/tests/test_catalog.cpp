#include <doctest.h>

#include "einext/catalog.hpp"
#include "einext/errors.hpp"
#include "einext/verifier.hpp"

using namespace einext;

TEST_CASE("table rows") {
  const auto r1 = table1(1);
  CHECK(r1.spec.algebra.is_zero());
  CHECK(*r1.expected_constant == 0.0);

  const auto r2 = verify_extension(table1(2).spec);
  CHECK(r2.einstein);
  CHECK(*r2.einstein_constant == doctest::Approx(-3.0));

  const auto r3 = verify_extension(table1(3).spec);
  CHECK(r3.einstein);
  CHECK(*r3.einstein_constant == doctest::Approx(-6.0));

  const auto e4 = table1(4, Rational(2));
  CHECK(e4.name == "table1:4:2");
  CHECK(e4.spec.algebra(2, 0, 0) == 2.0);
  CHECK(e4.spec.algebra(2, 1, 1) == -1.0);
  CHECK(e4.spec.eigenvalue(1) == Rational(2));
  const auto r4 = verify_extension(e4.spec);
  CHECK(r4.einstein);
  CHECK(*r4.einstein_constant == doctest::Approx(-5.0));

  CHECK_THROWS_AS(table1(4), PreconditionError);
  CHECK_THROWS_AS(table1(0), PreconditionError);
  CHECK_THROWS_AS(table1(5), PreconditionError);
}

TEST_CASE("row 4 across parameter values") {
  for (const Rational t : {Rational(-3), Rational(-1, 2), Rational(0), Rational(1), Rational(7, 3)}) {
    const auto e = table1(4, t);
    const auto r = verify_extension(e.spec, 1e-10);
    CHECK(r.einstein);
    const double td = t.to_double();
    CHECK(*r.einstein_constant == doctest::Approx(-(1.0 + td * td)));
    CHECK(*e.expected_constant == doctest::Approx(-(1.0 + td * td)));
    if (t.is_integer()) CHECK(is_derivation(e.spec).ok);
  }
}

TEST_CASE("heisenberg family") {
  CHECK(heisenberg(1).spec.algebra == table1(3).spec.algebra);
  for (int k = 1; k <= 4; ++k) {
    const auto e = heisenberg(k);
    CHECK(e.spec.dim() == 2 * k + 1);
    const auto r = verify_extension(e.spec);
    CHECK(r.einstein);
    CHECK(*r.einstein_constant == doctest::Approx(-(2.0 * k + 4.0)));
    CHECK(classify_type_1112(e.spec).passed);
  }
  CHECK(*heisenberg(2).expected_constant == -8.0);
  CHECK(*heisenberg(3).expected_constant == -10.0);
  CHECK_THROWS_AS(heisenberg(0), PreconditionError);
}

TEST_CASE("identity extensions") {
  const auto a = identity_extension(abelian(3));
  CHECK(verify_extension(a.spec).einstein);
  CHECK(*verify_extension(a.spec).einstein_constant == doctest::Approx(-3.0));

  const auto e = identity_extension(e2_algebra());
  CHECK(*verify_extension(e.spec).einstein_constant == doctest::Approx(-3.0));
  CHECK_FALSE(is_derivation(e.spec).ok);

  CHECK_THROWS_AS(identity_extension(table1(3).spec.algebra), RefusalError);
}

TEST_CASE("products") {
  const auto flat = product(make_spec(abelian(2), {1, 1}), make_spec(abelian(2), {1, 1}));
  CHECK(flat.dim() == 4);
  const auto r = verify_extension(flat);
  CHECK(r.einstein);
  CHECK(*r.einstein_constant == doctest::Approx(-4.0));

  const auto mixed = product(table1(3).spec, make_spec(abelian(1), {1}));
  CHECK(mixed.algebra(0, 1, 2) == 2.0);
  CHECK_FALSE(verify_extension(mixed).einstein);

  // line with p = 1 next to a hyperbolic plane with p = 0: same verdict as row 4 at t = 0
  const auto planes = product(make_spec(abelian(1), {1}), make_spec(hyperbolic_plane(), {0, 0}));
  const auto rp = verify_extension(planes);
  const auto r4 = verify_extension(table1(4, Rational(0)).spec);
  CHECK(rp.einstein == r4.einstein);
  CHECK(*rp.einstein_constant == doctest::Approx(*r4.einstein_constant));
}

TEST_CASE("the six-dimensional counterexample spectrum") {
  const SpectralVector p = counterexample_p6();
  CHECK(p == SpectralVector({Rational(-3), Rational(-2), Rational(-1), Rational(1), Rational(2), Rational(3)}));
  CHECK(p.trace().is_zero());
  const auto f6 = build_root_set(6);
  CHECK(cone_membership(p, f6).feasible);
  const auto c = check_consistency(p, maximal_independent_subset(6, orthogonal_roots(p, f6)), f6);
  CHECK_FALSE(c.ok());
  CHECK_FALSE(c.nonzero_trace);
}

TEST_CASE("lookup and listing") {
  CHECK(lookup("table1:3").spec.algebra == table1(3).spec.algebra);
  CHECK(lookup("table1:4").spec.parameter == Rational(1));
  CHECK(lookup("table1:4:1/2").spec.parameter == Rational(1, 2));
  CHECK(lookup("heisenberg:3").spec.dim() == 7);
  CHECK(lookup("e2").spec.algebra == e2_algebra());
  CHECK(lookup("identity:abelian:4").spec.dim() == 4);
  CHECK_THROWS_AS(lookup("identity:heisenberg"), RefusalError);
  CHECK_THROWS_AS(lookup("nope"), Error);
  CHECK_THROWS_AS(lookup("heisenberg:x"), Error);

  for (const auto& e : catalog_entries()) {
    INFO(e.name);
    const auto r = verify_extension(e.spec, 1e-10);
    CHECK(r.einstein == e.expect_einstein);
    if (e.expected_constant && r.einstein) CHECK(*r.einstein_constant == doctest::Approx(*e.expected_constant));
  }
}
