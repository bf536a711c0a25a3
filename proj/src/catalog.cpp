#include "einext/catalog.hpp"

#include "einext/curvature.hpp"
#include "einext/errors.hpp"

#include <charconv>

namespace einext {

StructureTensor abelian(int n) { return StructureTensor(n); }

StructureTensor e2_algebra() {
  StructureTensor mu(3);
  mu.set(2, 0, 1, 1.0);
  mu.set(2, 1, 0, -1.0);
  return mu;
}

StructureTensor hyperbolic_plane() {
  StructureTensor mu(2);
  mu.set(0, 1, 1, -1.0);
  return mu;
}

namespace {

ExtensionSpec with_spectrum(StructureTensor mu, std::initializer_list<long long> p) {
  std::vector<AffineRational> ev;
  for (long long x : p) ev.emplace_back(Rational(x));
  return ExtensionSpec(std::move(mu), std::move(ev));
}

}  // namespace

CatalogEntry table1(int row, std::optional<Rational> param) {
  CatalogEntry e;
  switch (row) {
    case 1:
      e = {"table1:1", with_spectrum(abelian(3), {0, 0, 0}), true, 0.0, "flat R^4"};
      break;
    case 2:
      e = {"table1:2", with_spectrum(abelian(3), {1, 1, 1}), true, -3.0, "real hyperbolic space H^4(-1)"};
      break;
    case 3: {
      StructureTensor mu(3);
      mu.set(0, 1, 2, 2.0);
      e = {"table1:3", with_spectrum(mu, {1, 1, 2}), true, -6.0, "complex hyperbolic plane"};
      break;
    }
    case 4: {
      if (!param) throw PreconditionError("table1 row 4 requires a parameter");
      const Rational t = *param;
      StructureTensor mu(3);
      mu.set(2, 0, 0, t.to_double());
      mu.set(2, 1, 1, -1.0);
      std::vector<AffineRational> p = {AffineRational(Rational(1)), AffineRational::parameter(), AffineRational(Rational(0))};
      ExtensionSpec spec(std::move(mu), std::move(p), t);
      spec.decomposition = OrthogonalDecomposition{{2}, {0, 1}};
      e = {"table1:4:" + to_string(t), std::move(spec), true, -(1.0 + t.to_double() * t.to_double()),
           "product of two hyperbolic planes"};
      break;
    }
    default:
      throw PreconditionError("table1 row must be 1..4, got " + std::to_string(row));
  }
  return e;
}

CatalogEntry heisenberg(int k) {
  if (k < 1) throw PreconditionError("heisenberg(k) needs k >= 1, got " + std::to_string(k));
  const int n = 2 * k + 1;
  StructureTensor mu(n);
  for (int i = 0; i < k; ++i) mu.set(2 * i, 2 * i + 1, n - 1, 2.0);
  std::vector<AffineRational> p(static_cast<std::size_t>(n), AffineRational(Rational(1)));
  p.back() = AffineRational(Rational(2));
  return {"heisenberg:" + std::to_string(k), ExtensionSpec(std::move(mu), std::move(p)), true,
          -static_cast<double>(2 * k + 4), "Heisenberg algebra, K-contact type"};
}

CatalogEntry identity_extension(const StructureTensor& flat, double tol) {
  const int n = flat.dim();
  std::vector<AffineRational> p(static_cast<std::size_t>(n), AffineRational(Rational(1)));
  ExtensionSpec spec(flat, std::move(p));
  const Eigen::MatrixXd ric = ricci_direct(spec, 0.0);
  if (n > 0 && ric.cwiseAbs().maxCoeff() > tol) {
    throw RefusalError("identity extension needs a Ricci-flat input: D is scalar only over Ricci-flat bases");
  }
  return {"identity", std::move(spec), true, -static_cast<double>(n), "D = id over a flat base"};
}

ExtensionSpec product(const ExtensionSpec& a, const ExtensionSpec& b) {
  if (a.has_parameter() && b.has_parameter() && a.parameter != b.parameter) {
    throw PreconditionError("product of specs with different parameter values");
  }
  const int na = a.dim();
  StructureTensor mu(na + b.dim());
  mu.lie_algebra = a.algebra.lie_algebra && b.algebra.lie_algebra;
  for (const auto& [key, v] : a.algebra.entries()) mu.set(key[0], key[1], key[2], v);
  for (const auto& [key, v] : b.algebra.entries()) mu.set(key[0] + na, key[1] + na, key[2] + na, v);
  std::vector<AffineRational> p = a.eigenvalues;
  p.insert(p.end(), b.eigenvalues.begin(), b.eigenvalues.end());
  ExtensionSpec out(std::move(mu), std::move(p), a.has_parameter() ? a.parameter : b.parameter);
  out.constant_frame = a.constant_frame && b.constant_frame;
  return out;
}

SpectralVector counterexample_p6() { return SpectralVector{-3, -2, -1, 1, 2, 3}; }

namespace {

int parse_int(const std::string& s, const std::string& name) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad integer '" + s + "' in catalog name " + name);
  return v;
}

}  // namespace

CatalogEntry lookup(const std::string& name) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto colon = name.find(':', start);
    parts.push_back(name.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  const std::string& head = parts[0];
  if (head == "table1" && parts.size() >= 2) {
    const int row = parse_int(parts[1], name);
    if (row == 4) {
      const Rational t = parts.size() >= 3 ? parse_rational(parts[2]) : Rational(1);
      return table1(4, t);
    }
    if (parts.size() != 2) throw ParseError("table1 rows 1-3 take no parameter: " + name);
    return table1(row);
  }
  if (head == "heisenberg" && parts.size() == 2) return heisenberg(parse_int(parts[1], name));
  if (head == "e2" && parts.size() == 1) {
    CatalogEntry e = identity_extension(e2_algebra());
    e.name = "e2";
    e.note = "flat e(2) with D = id; D is not a derivation";
    return e;
  }
  if (head == "identity" && parts.size() >= 2) {
    if (parts[1] == "e2" && parts.size() == 2) {
      CatalogEntry e = identity_extension(e2_algebra());
      e.name = name;
      return e;
    }
    if (parts[1] == "abelian" && parts.size() == 3) {
      CatalogEntry e = identity_extension(abelian(parse_int(parts[2], name)));
      e.name = name;
      return e;
    }
    if (parts[1] == "heisenberg" && parts.size() == 2) return identity_extension(heisenberg(1).spec.algebra);
  }
  if (head == "hyperbolic-plane-product" && parts.size() == 1) {
    // R with p = 1, times the hyperbolic plane with p = 0
    ExtensionSpec line(abelian(1), {AffineRational(Rational(1))});
    ExtensionSpec plane(hyperbolic_plane(), {AffineRational(Rational(0)), AffineRational(Rational(0))});
    return {name, product(line, plane), true, -1.0, "line times hyperbolic plane"};
  }
  throw ParseError("unknown catalog name '" + name +
                   "' (try table1:1..3, table1:4:PARAM, heisenberg:K, e2, identity:abelian:N, hyperbolic-plane-product)");
}

std::vector<CatalogEntry> catalog_entries() {
  std::vector<CatalogEntry> out;
  for (int row = 1; row <= 3; ++row) out.push_back(table1(row));
  out.push_back(table1(4, Rational(1)));
  for (int k = 1; k <= 4; ++k) out.push_back(heisenberg(k));
  out.push_back(lookup("e2"));
  out.push_back(lookup("hyperbolic-plane-product"));
  return out;
}

}  // namespace einext
