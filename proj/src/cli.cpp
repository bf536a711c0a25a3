#include "einext/cli.hpp"

#include "einext/catalog.hpp"
#include "einext/errors.hpp"
#include "einext/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace einext {

namespace {

std::string read_all(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ExtensionSpec load_spec(const CommandConfig& c) {
  const int sources = !c.input_path.empty() + !c.inline_json.empty() + !c.catalog_name.empty();
  if (sources != 1) throw ParseError("give exactly one of --input, --json, --catalog");
  if (!c.catalog_name.empty()) return lookup(c.catalog_name).spec;
  std::string text;
  if (!c.inline_json.empty()) {
    text = c.inline_json;
  } else if (c.input_path == "-") {
    text = read_all(std::cin);
  } else {
    std::ifstream f(c.input_path);
    if (!f) throw ParseError("cannot open input file " + c.input_path);
    text = read_all(f);
  }
  ExtensionSpec spec = spec_from_json(parse_json(text));
  validate(spec);
  return spec;
}

double tolerance(const CommandConfig& c, double fallback) {
  if (c.tolerance) return *c.tolerance;
  if (const char* env = std::getenv(kToleranceEnv); env != nullptr && *env != '\0') {
    try {
      const double v = parse_rational(env).to_double();
      if (v > 0.0) return v;
    } catch (const Error&) {
    }
    throw ParseError(std::string(kToleranceEnv) + " must be a positive number, got '" + env + "'");
  }
  return fallback;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

void pretty_verify(const VerificationReport& r, std::ostream& out) {
  out << "Einstein: " << (r.einstein ? "yes" : "no");
  if (r.einstein_constant) out << "  constant " << fmt(*r.einstein_constant);
  out << "\n";
  for (const auto& [name, v] : r.residuals) {
    out << "  " << std::left << std::setw(28) << name << fmt(v) << (v <= r.tolerance ? "" : "  FAIL") << "\n";
  }
}

void pretty_classify(const ClassifierReport& r, std::ostream& out) {
  out << "type " << r.type << ": " << (r.passed ? "pass" : "fail") << " (" << r.verdict << ")\n";
  for (const auto& [name, v] : r.checks) out << "  " << std::left << std::setw(36) << name << fmt(v) << "\n";
  if (r.gauge_obstruction) out << "  gauge obstruction\n";
}

void pretty_grouped(const std::string& title, const GroupedMatrix& g, std::ostream& out) {
  out << title << "\n";
  for (const auto& [q, c] : g.classes()) {
    out << "  exp(-2u*(" << to_string(q) << ")):\n";
    for (Eigen::Index r = 0; r < c.rows(); ++r) {
      out << "   ";
      for (Eigen::Index k = 0; k < c.cols(); ++k) out << " " << std::setw(10) << fmt(c(r, k));
      out << "\n";
    }
  }
}

void pretty_spectral_set(const std::string& title, const std::set<SpectralVector>& s, std::ostream& out) {
  out << title << " (" << s.size() << ")\n";
  for (const auto& p : s) out << "  " << to_string(p) << "\n";
}

int do_enumerate(const CommandConfig& c, std::ostream& out) {
  if (c.dim == 0) throw ParseError("enumerate needs --dim");
  const EnumerationReport r = enumerate_report(c.dim, c.cap);
  const auto& chosen = c.cone_filter ? r.filtered : r.unfiltered;
  if (c.pretty) {
    if (c.report) {
      pretty_spectral_set("unfiltered", r.unfiltered, out);
      pretty_spectral_set("cone filtered", r.filtered, out);
      pretty_spectral_set("rejected by the cone condition", r.cone_rejected, out);
    } else {
      pretty_spectral_set(c.cone_filter ? "cone filtered" : "types", chosen, out);
    }
    return kExitOk;
  }
  if (c.report) {
    out << to_json(r).dump() << "\n";
  } else {
    Json arr = Json::array();
    for (const auto& p : chosen) arr.push_back(to_json(p));
    out << arr.dump() << "\n";
  }
  return kExitOk;
}

int do_verify(const CommandConfig& c, std::ostream& out) {
  const ExtensionSpec spec = load_spec(c);
  const VerificationReport r = verify_extension(spec, tolerance(c, kVerifyTolerance));
  if (c.pretty) {
    pretty_verify(r, out);
  } else {
    out << to_json(r).dump() << "\n";
  }
  return r.einstein ? kExitOk : kExitFail;
}

int do_classify(const CommandConfig& c, std::ostream& out) {
  const ExtensionSpec spec = load_spec(c);
  const double tol = tolerance(c, kVerifyTolerance);
  ClassifierReport r;
  if (c.type == "auto") {
    r = classify(spec, tol);
  } else if (c.type == "0001") {
    r = classify_type_0001(spec, tol);
  } else if (c.type == "1110") {
    r = classify_type_1110(spec, tol);
  } else if (c.type == "1112") {
    r = classify_type_1112(spec, tol);
  } else {
    throw ParseError("--type must be auto, 0001, 1110 or 1112");
  }
  if (c.pretty) {
    pretty_classify(r, out);
  } else {
    out << to_json(r).dump() << "\n";
  }
  return r.passed ? kExitOk : kExitFail;
}

int do_curvature(const CommandConfig& c, std::ostream& out) {
  const CurvatureReport r = extension_ricci(load_spec(c));
  if (c.pretty) {
    pretty_grouped("Ric^u", r.ric_u, out);
    out << "scal^u\n";
    for (const auto& [q, v] : r.scal_terms) out << "  exp(-2u*(" << to_string(q) << ")): " << fmt(v) << "\n";
    pretty_grouped("extension Ricci (index 0 = u direction)", r.extension, out);
  } else {
    out << to_json(r).dump() << "\n";
  }
  return kExitOk;
}

int do_catalog(const CommandConfig& c, std::ostream& out) {
  std::vector<CatalogEntry> entries;
  if (!c.catalog_name.empty()) {
    entries.push_back(lookup(c.catalog_name));
  } else {
    entries = catalog_entries();
  }
  if (c.pretty) {
    for (const auto& e : entries) {
      out << std::left << std::setw(22) << e.name << " n=" << e.spec.dim() << "  expected "
          << (e.expect_einstein ? "Einstein" : "not Einstein");
      if (e.expected_constant) out << " " << fmt(*e.expected_constant);
      out << "  " << e.note << "\n";
    }
    return kExitOk;
  }
  if (!c.catalog_name.empty()) {
    out << to_json(entries.front()).dump() << "\n";
  } else {
    Json arr = Json::array();
    for (const auto& e : entries) arr.push_back(to_json(e));
    out << arr.dump() << "\n";
  }
  return kExitOk;
}

int do_search(const CommandConfig& c, std::ostream& out) {
  if (c.spectral.empty()) throw ParseError("search needs --spectral");
  SearchProblem problem;
  problem.spectral = parse_spectral_list(c.spectral);
  if (c.pattern == "full") {
    problem.pattern = full_pattern(static_cast<int>(problem.spectral.size()));
  } else if (c.pattern != "auto") {
    throw ParseError("--pattern must be auto or full");
  }
  problem.restarts = c.restarts;
  problem.seed = c.seed;
  problem.tolerance = tolerance(c, problem.tolerance);
  problem.max_iterations = c.max_iterations;
  problem.jacobi_weight = c.jacobi_weight;
  problem.bound = c.bound;
  const SearchResult r = search(problem);
  if (c.pretty) {
    out << "converged: " << (r.converged ? "yes" : "no") << "  residual " << fmt(r.residual) << "\n";
    for (const auto& [key, v] : r.best_mu.entries()) {
      if (std::abs(v) > 1e-12) out << "  mu_{" << key[0] + 1 << key[1] + 1 << "|" << key[2] + 1 << "} = " << fmt(v) << "\n";
    }
    for (const auto& s : r.restarts) {
      out << "  restart " << s.index << ": " << fmt(s.start_residual) << " -> " << fmt(s.residual) << "\n";
    }
  } else {
    out << to_json(r, problem.spectral).dump() << "\n";
  }
  return r.converged ? kExitOk : kExitFail;
}

}  // namespace

int run(const CommandConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* target = &out;
  if (!config.output_path.empty()) {
    file.open(config.output_path);
    if (!file) {
      err << "error: cannot write " << config.output_path << "\n";
      return kExitInput;
    }
    target = &file;
  }
  try {
    if (config.subcommand == "enumerate") return do_enumerate(config, *target);
    if (config.subcommand == "verify") return do_verify(config, *target);
    if (config.subcommand == "classify") return do_classify(config, *target);
    if (config.subcommand == "curvature") return do_curvature(config, *target);
    if (config.subcommand == "catalog") return do_catalog(config, *target);
    if (config.subcommand == "search") return do_search(config, *target);
    err << "error: unknown subcommand '" << config.subcommand << "'\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CommandConfig c;
  CLI::App app{"Einstein rank-one extensions: type enumeration, curvature, verification, search", "einext"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--pretty", c.pretty, "human-readable tables instead of JSON");
  app.add_option("-o,--output", c.output_path, "write to a file instead of stdout");

  auto add_input = [&](CLI::App* sub) {
    auto* in = sub->add_option("--input", c.input_path, "algebra JSON file ('-' for stdin)");
    auto* js = sub->add_option("--json", c.inline_json, "algebra JSON given inline");
    auto* cat = sub->add_option("--catalog", c.catalog_name, "catalog entry, e.g. table1:3 or table1:4:2");
    in->excludes(js)->excludes(cat);
    js->excludes(cat);
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", c.tolerance, std::string("tolerance (default from ") + kToleranceEnv + ")")
        ->check(CLI::PositiveNumber);
  };

  auto* enumerate = app.add_subcommand("enumerate", "admissible eigenvalue types in dimension n");
  enumerate->add_option("--dim", c.dim, "dimension n")->required();
  enumerate->add_option("--cap", c.cap, "dimension cap")->capture_default_str();
  enumerate->add_flag("--cone-filter", c.cone_filter, "also require the cone condition");
  enumerate->add_flag("--report", c.report, "emit filtered and unfiltered sets with their difference");

  auto* verify = app.add_subcommand("verify", "check the Einstein conditions");
  add_input(verify);
  add_tol(verify);

  auto* classify = app.add_subcommand("classify", "structural checks for types (0,..,0,1), (1,..,1,0), (1,..,1,2)");
  add_input(classify);
  add_tol(classify);
  classify->add_option("--type", c.type, "auto|0001|1110|1112")->capture_default_str();

  auto* curvature = app.add_subcommand("curvature", "grouped Ricci, scalar curvature and extension Ricci");
  add_input(curvature);

  auto* catalog = app.add_subcommand("catalog", "built-in examples in the algebra format");
  auto* list = catalog->add_flag("--list", c.list, "all entries (default)");
  catalog->add_option("--name", c.catalog_name, "a single entry")->excludes(list);

  auto* search_cmd = app.add_subcommand("search", "numerical search for structure constants of a type");
  search_cmd->add_option("--spectral", c.spectral, "eigenvalues, e.g. \"1,1,2\"")->required();
  search_cmd->add_option("--restarts", c.restarts)->capture_default_str()->check(CLI::PositiveNumber);
  search_cmd->add_option("--seed", c.seed)->capture_default_str();
  add_tol(search_cmd);
  search_cmd->add_option("--pattern", c.pattern, "auto|full")->capture_default_str();
  search_cmd->add_option("--max-iter", c.max_iterations)->capture_default_str()->check(CLI::PositiveNumber);
  search_cmd->add_option("--jacobi-weight", c.jacobi_weight)->capture_default_str();
  search_cmd->add_option("--bound", c.bound, "starts drawn from [-bound, bound]")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  return run(c, out, err);
}

}  // namespace einext
