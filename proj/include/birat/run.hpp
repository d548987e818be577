#pragma once

#include "birat/errors.hpp"
#include "birat/geomcheck.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace birat {

/// Invalid run configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string model = "lv";
  /// kahan | kahan-series:K | lv-family | schnakenberg | euler
  std::string method = "kahan";
  /// key=value pairs, or the ten positional entries of an lv-family list under keys "0".."9".
  std::map<std::string, std::string> params;
  double h = 0.01;
  std::int64_t steps = 1;
  std::vector<double> x0;  // empty: model default
  std::string output;      // empty or "-": stdout
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

/// Parses "--params" text: "mu=0.5,nu=0.6" or "1/2,0,3/2,...".
std::map<std::string, std::string> parse_param_list(const std::string& text);
std::vector<double> parse_state(const std::string& text);

/// Applies a JSON object mirroring RunConfig onto cfg.
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);

/// Fills model defaults (x0) and validates; throws ConfigError.
void finalize_config(RunConfig& cfg);

struct PreparedRun {
  StepMap step;
  StateVector x0;
  std::vector<std::string> state_names;
  std::string map_id;
  std::vector<std::string> warnings;
};

PreparedRun prepare_run(const RunConfig& cfg);

struct RunResult {
  Trajectory trajectory;
  std::vector<std::string> state_names;
  std::string error;  // empty on success
  std::vector<std::string> warnings;
};

RunResult run_integration(const RunConfig& cfg);

/// "t,<names...>" header, then one row per state, numbers with 17 significant digits.
void write_csv(std::ostream& os, const RunResult& r);
/// {"map_id", "h", "columns", "rows", ["error"]}, numbers with 17 significant digits.
void write_json(std::ostream& os, const RunResult& r);

/// Formats a double with 17 significant digits.
std::string format_number(double v);

}  // namespace birat
