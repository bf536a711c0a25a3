#pragma once

#include "einext/catalog.hpp"
#include "einext/curvature.hpp"
#include "einext/solver.hpp"
#include "einext/spectral.hpp"
#include "einext/verifier.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace einext {

using Json = nlohmann::ordered_json;

// Parses text, turning syntax errors into ParseError with "line L, column C".
Json parse_json(std::string_view text);

// Algebra format, 1-based indices:
// {"dim": n, "mu": [{"i":1,"j":2,"k":3,"v":2}], "spectral": [1, "1/2", "t"],
//  "parameter": "1/2", "constant": true, "lie_algebra": true,
//  "decomposition": {"h": [3], "m": [1, 2]}}
ExtensionSpec spec_from_json(const Json& j);
Json to_json(const ExtensionSpec& spec);

// Integer array when every entry is an integer, "num/den" strings otherwise.
Json to_json(const SpectralVector& p);
SpectralVector spectral_from_json(const Json& j);

// "1,1,2" or "1, 1/2, 3"
SpectralVector parse_spectral_list(std::string_view text);

Json to_json(const VerificationReport& r);
VerificationReport verification_from_json(const Json& j);

Json to_json(const GroupedMatrix& g);
GroupedMatrix grouped_from_json(const Json& j);
Json to_json(const GroupedScalar& s);
Json to_json(const CurvatureReport& r);

Json to_json(const ClassifierReport& r);
Json to_json(const ConeCertificate& c);
Json to_json(const EnumerationReport& r);
Json to_json(const SearchResult& r, const SpectralVector& p);
Json to_json(const CatalogEntry& e);

}  // namespace einext
