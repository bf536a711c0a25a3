#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace einext {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitFail = 3;

// Environment variable consulted for the default tolerance.
inline constexpr const char* kToleranceEnv = "EINEXT_TOL";

struct CommandConfig {
  std::string subcommand;  // enumerate | verify | classify | curvature | catalog | search
  std::string input_path;  // "-" reads stdin
  std::string inline_json;
  std::string catalog_name;
  std::string output_path;
  bool pretty = false;
  std::optional<double> tolerance;

  int dim = 0;
  int cap = 7;
  bool cone_filter = false;
  bool report = false;

  std::string type = "auto";
  bool list = false;

  std::string spectral;
  int restarts = 8;
  std::uint64_t seed = 42;
  std::string pattern = "auto";
  int max_iterations = 200;
  double jacobi_weight = 10.0;
  double bound = 3.0;
};

// argv without the program name. Returns the exit code; JSON goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

}  // namespace einext
