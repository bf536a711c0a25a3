#include "einext/io.hpp"

#include "einext/errors.hpp"

#include <algorithm>
#include <set>

namespace einext {

namespace {

std::string position(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

Rational rational_value(const Json& v, const std::string& what) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ParseError(what + " must be a number or a \"num/den\" string");
}

double real_value(const Json& v, const std::string& what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_rational(v.get<std::string>()).to_double();
  throw ParseError(what + " must be a number or a string");
}

AffineRational affine_value(const Json& v, const std::string& what) {
  if (v.is_string()) return parse_affine(v.get<std::string>());
  return AffineRational(rational_value(v, what));
}

int index_value(const Json& v, int n, const std::string& what) {
  if (!v.is_number_integer()) throw ParseError(what + " must be an integer");
  const long long i = v.get<long long>();
  if (i < 1 || i > n) throw ParseError(what + " = " + std::to_string(i) + " is outside 1.." + std::to_string(n));
  return static_cast<int>(i - 1);
}

const Json& field(const Json& j, const char* name) {
  if (!j.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

Json rational_json(const Rational& r) {
  if (r.is_integer()) return Json(static_cast<long long>(r.numerator()));
  return Json(to_fraction_string(r));
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from(const Json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw ParseError("matrix has the wrong number of rows");
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw ParseError("matrix has the wrong number of columns");
    for (int c = 0; c < n; ++c) m(r, c) = real_value(row[static_cast<std::size_t>(c)], "matrix entry");
  }
  return m;
}

Json vector_json(const Eigen::VectorXd& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::string what = e.what();
    const auto cut = what.find("syntax error");
    throw ParseError("malformed JSON at " + position(text, e.byte) + ": " +
                     (cut == std::string::npos ? what : what.substr(cut)));
  }
}

ExtensionSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("algebra JSON must be an object");
  static const std::set<std::string> known = {"dim",      "mu",          "spectral",      "parameter", "constant",
                                              "lie_algebra", "decomposition", "name",      "expected",  "note"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ParseError("unknown field \"" + key + "\" in algebra JSON");
  }
  const Json& dim_field = field(j, "dim");
  if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1 || dim_field.get<long long>() > 64) {
    throw ParseError("\"dim\" must be an integer in 1..64");
  }
  const int n = dim_field.get<int>();

  StructureTensor mu(n);
  if (j.contains("lie_algebra")) {
    if (!j.at("lie_algebra").is_boolean()) throw ParseError("\"lie_algebra\" must be a boolean");
    mu.lie_algebra = j.at("lie_algebra").get<bool>();
  }
  const Json& entries = j.contains("mu") ? j.at("mu") : Json::array();
  if (!entries.is_array()) throw ParseError("\"mu\" must be an array");
  std::set<std::array<int, 3>> seen;
  for (const Json& e : entries) {
    if (!e.is_object()) throw ParseError("each \"mu\" entry must be an object with i, j, k, v");
    const int i = index_value(field(e, "i"), n, "i");
    const int jj = index_value(field(e, "j"), n, "j");
    const int k = index_value(field(e, "k"), n, "k");
    const double v = real_value(field(e, "v"), "v");
    if (i == jj) {
      if (v != 0.0) throw ParseError("mu_{ii|k} must be zero (antisymmetry)");
      continue;
    }
    const std::array<int, 3> key{std::min(i, jj), std::max(i, jj), k};
    if (!seen.insert(key).second) {
      throw ParseError("duplicate entry for mu_{" + std::to_string(key[0] + 1) + std::to_string(key[1] + 1) + "|" +
                       std::to_string(k + 1) + "}");
    }
    mu.set(i, jj, k, v);
  }

  const Json& spectral = field(j, "spectral");
  if (!spectral.is_array() || static_cast<int>(spectral.size()) != n) {
    throw ParseError("\"spectral\" must be an array of length dim = " + std::to_string(n));
  }
  std::vector<AffineRational> p;
  for (const Json& e : spectral) p.push_back(affine_value(e, "spectral entry"));

  const Rational theta = j.contains("parameter") ? rational_value(j.at("parameter"), "parameter") : Rational(0);
  ExtensionSpec spec(std::move(mu), std::move(p), theta);
  if (spec.has_parameter() && !j.contains("parameter")) {
    throw ParseError("spectral entries use t but no \"parameter\" value is given");
  }
  if (j.contains("constant")) {
    if (!j.at("constant").is_boolean()) throw ParseError("\"constant\" must be a boolean");
    spec.constant_frame = j.at("constant").get<bool>();
  }
  if (j.contains("decomposition")) {
    const Json& d = j.at("decomposition");
    if (!d.is_object()) throw ParseError("\"decomposition\" must be an object with h and m");
    OrthogonalDecomposition decomp;
    for (const Json& x : field(d, "h")) decomp.h.push_back(index_value(x, n, "decomposition index"));
    for (const Json& x : field(d, "m")) decomp.m.push_back(index_value(x, n, "decomposition index"));
    spec.decomposition = decomp;
  }
  return spec;
}

Json to_json(const ExtensionSpec& spec) {
  Json j;
  j["dim"] = spec.dim();
  Json mu = Json::array();
  for (const auto& [key, v] : spec.algebra.entries()) {
    mu.push_back({{"i", key[0] + 1}, {"j", key[1] + 1}, {"k", key[2] + 1}, {"v", v}});
  }
  j["mu"] = mu;
  Json p = Json::array();
  for (const auto& e : spec.eigenvalues) {
    if (e.is_constant()) {
      p.push_back(rational_json(e.constant));
    } else {
      p.push_back(to_string(e));
    }
  }
  j["spectral"] = p;
  if (spec.has_parameter()) j["parameter"] = to_fraction_string(spec.parameter);
  if (!spec.constant_frame) j["constant"] = false;
  if (!spec.algebra.lie_algebra) j["lie_algebra"] = false;
  if (spec.decomposition) {
    Json h = Json::array();
    Json m = Json::array();
    for (int a : spec.decomposition->h) h.push_back(a + 1);
    for (int a : spec.decomposition->m) m.push_back(a + 1);
    j["decomposition"] = {{"h", h}, {"m", m}};
  }
  return j;
}

Json to_json(const SpectralVector& p) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) out.push_back(rational_json(p[i]));
  return out;
}

SpectralVector spectral_from_json(const Json& j) {
  if (!j.is_array() || j.size() < 2) throw ParseError("spectral vector must be an array of at least 2 entries");
  RationalVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = rational_value(j[i], "spectral entry");
  return SpectralVector(v);
}

SpectralVector parse_spectral_list(std::string_view text) {
  std::vector<Rational> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    std::string_view part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    values.push_back(parse_rational(part));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (values.size() < 2) throw ParseError("spectral list needs at least 2 entries");
  RationalVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return SpectralVector(v);
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["einstein"] = r.einstein;
  j["einstein_constant"] = r.einstein_constant ? Json(*r.einstein_constant) : Json(nullptr);
  j["tolerance"] = r.tolerance;
  j["max_residual"] = r.max_residual();
  Json res = Json::object();
  for (const auto& [name, v] : r.residuals) res[name] = v;
  j["residuals"] = res;
  j["violated_conditions"] = r.violated_conditions;
  return j;
}

VerificationReport verification_from_json(const Json& j) {
  VerificationReport r;
  r.einstein = field(j, "einstein").get<bool>();
  const Json& c = field(j, "einstein_constant");
  if (!c.is_null()) r.einstein_constant = c.get<double>();
  r.tolerance = field(j, "tolerance").get<double>();
  for (const auto& [name, v] : field(j, "residuals").items()) r.residuals[name] = v.get<double>();
  r.violated_conditions = field(j, "violated_conditions").get<std::vector<std::string>>();
  return r;
}

Json to_json(const GroupedMatrix& g) {
  Json out = Json::array();
  for (const auto& [q, c] : g.classes()) out.push_back({{"exponent", to_string(q)}, {"matrix", matrix_json(c)}});
  return out;
}

GroupedMatrix grouped_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("grouped matrix must be an array of classes");
  int n = 0;
  if (!j.empty()) n = static_cast<int>(field(j[0], "matrix").size());
  GroupedMatrix g(n);
  for (const Json& e : j) g.set(parse_affine(field(e, "exponent").get<std::string>()), matrix_from(field(e, "matrix"), n));
  return g;
}

Json to_json(const GroupedScalar& s) {
  Json out = Json::array();
  for (const auto& [q, v] : s) out.push_back({{"exponent", to_string(q)}, {"value", v}});
  return out;
}

Json to_json(const CurvatureReport& r) {
  Json j;
  j["ric_u"] = to_json(r.ric_u);
  j["scal_terms"] = to_json(r.scal_terms);
  j["extension_ricci"] = to_json(r.extension);
  return j;
}

Json to_json(const ClassifierReport& r) {
  Json j;
  j["type"] = r.type;
  j["passed"] = r.passed;
  j["verdict"] = r.verdict;
  Json frame = Json::array();
  for (int f : r.frame) frame.push_back(f + 1);
  j["frame"] = frame;
  Json checks = Json::object();
  for (const auto& [name, v] : r.checks) checks[name] = v;
  j["checks"] = checks;
  j["failures"] = r.failures;
  j["gauge_obstruction"] = r.gauge_obstruction;
  if (r.spectrum.size()) j["spectrum"] = vector_json(r.spectrum);
  return j;
}

Json to_json(const ConeCertificate& c) {
  Json j;
  j["feasible"] = c.feasible;
  Json target = Json::array();
  for (Eigen::Index i = 0; i < c.target.size(); ++i) target.push_back(rational_json(c.target(i)));
  j["target"] = target;
  Json gens = Json::array();
  for (std::size_t a = 0; a < c.generators.size(); ++a) {
    Json g = {{"root", to_string(c.generators[a])}};
    if (c.feasible) g["coefficient"] = rational_json(c.coefficients(static_cast<Eigen::Index>(a)));
    gens.push_back(g);
  }
  j["generators"] = gens;
  if (!c.feasible) {
    Json w = Json::array();
    for (Eigen::Index i = 0; i < c.witness.size(); ++i) w.push_back(rational_json(c.witness(i)));
    j["witness"] = w;
  }
  j["verified"] = c.verify();
  return j;
}

Json to_json(const EnumerationReport& r) {
  auto list = [](const std::set<SpectralVector>& s) {
    Json out = Json::array();
    for (const auto& p : s) out.push_back(to_json(p));
    return out;
  };
  Json j;
  j["dim"] = r.dim;
  j["unfiltered"] = list(r.unfiltered);
  j["filtered"] = list(r.filtered);
  j["cone_rejected"] = list(r.cone_rejected);
  j["discrepancy"] = !r.cone_rejected.empty();
  j["flats_visited"] = r.flats_visited;
  return j;
}

Json to_json(const SearchResult& r, const SpectralVector& p) {
  std::vector<AffineRational> ev;
  for (Eigen::Index i = 0; i < p.size(); ++i) ev.emplace_back(p[i]);
  Json j;
  j["spectral"] = to_json(p);
  j["converged"] = r.converged;
  j["residual"] = r.residual;
  j["message"] = r.message;
  j["best_mu"] = to_json(ExtensionSpec(r.best_mu, ev));
  Json restarts = Json::array();
  for (const auto& s : r.restarts) {
    restarts.push_back({{"index", s.index},
                        {"start_residual", s.start_residual},
                        {"residual", s.residual},
                        {"mu_norm", s.mu_norm},
                        {"evaluations", s.evaluations}});
  }
  j["restarts"] = restarts;
  return j;
}

Json to_json(const CatalogEntry& e) {
  Json j;
  j["name"] = e.name;
  const Json spec = to_json(e.spec);
  for (const auto& [key, value] : spec.items()) j[key] = value;
  j["expected"] = {{"einstein", e.expect_einstein},
                   {"einstein_constant", e.expected_constant ? Json(*e.expected_constant) : Json(nullptr)}};
  j["note"] = e.note;
  return j;
}

}  // namespace einext
