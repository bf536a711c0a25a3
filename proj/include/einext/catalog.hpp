#pragma once

#include "einext/spectral.hpp"
#include "einext/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace einext {

struct CatalogEntry {
  std::string name;
  ExtensionSpec spec;
  bool expect_einstein = true;
  std::optional<double> expected_constant;
  std::string note;
};

// Rows 1..4 of the four-dimensional classification; row 4 carries the free
// parameter symbolically (p_2 = t) and evaluates it at `param`.
CatalogEntry table1(int row, std::optional<Rational> param = std::nullopt);

// n = 2k+1, mu_{2i-1,2i|n} = 2, p = (1,...,1,2)
CatalogEntry heisenberg(int k);

// Flat algebra with D = id. Throws RefusalError unless Ric at u = 0 vanishes.
CatalogEntry identity_extension(const StructureTensor& flat, double tol = 1e-9);

// Block direct sum; the spectral vectors are concatenated.
ExtensionSpec product(const ExtensionSpec& a, const ExtensionSpec& b);

// Flat e(2): [e_3, e_1] = e_2, [e_3, e_2] = -e_1.
StructureTensor e2_algebra();

// [e_1, e_2] = -e_2 in dimension 2 (Ricci = -id).
StructureTensor hyperbolic_plane();

StructureTensor abelian(int n);

SpectralVector counterexample_p6();

// Names accepted by lookup(): "table1:1".."table1:3", "table1:4[:param]",
// "heisenberg:K", "e2", "identity:e2", "identity:abelian:N", "hyperbolic-plane-product".
CatalogEntry lookup(const std::string& name);

// Every fixed entry, for `catalog --list`.
std::vector<CatalogEntry> catalog_entries();

}  // namespace einext
