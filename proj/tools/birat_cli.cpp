#include "birat/errors.hpp"
#include "birat/lvfamily.hpp"
#include "birat/run.hpp"
#include "birat/verify.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kMapFailure = 2;
constexpr int kNegative = 3;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("birat");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("BIRAT_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

struct IntegrateArgs {
  std::string config;
  std::string model, method, params, x0, output, format;
  double h = 0.0, tol = 0.0;
  std::int64_t steps = 0;
  std::uint64_t seed = 0;
};

int cmd_integrate(const IntegrateArgs& a, const CLI::App& sub) {
  birat::RunConfig cfg;
  try {
    if (!a.config.empty()) {
      std::ifstream in(a.config);
      if (!in) throw birat::ConfigError("config: cannot open " + a.config);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& ex) {
        throw birat::ConfigError(std::string("config: ") + ex.what());
      }
      birat::apply_config_json(cfg, j);
    }
    const auto given = [&sub](const char* flag) { return sub.count(flag) > 0; };
    if (given("--model")) cfg.model = a.model;
    if (given("--method")) cfg.method = a.method;
    if (given("--params")) cfg.params = birat::parse_param_list(a.params);
    if (given("--h")) cfg.h = a.h;
    if (given("--steps")) cfg.steps = a.steps;
    if (given("--x0")) cfg.x0 = birat::parse_state(a.x0);
    if (given("--output")) cfg.output = a.output;
    if (given("--format")) {
      cfg.format = a.format == "json" ? birat::OutputFormat::Json : birat::OutputFormat::Csv;
    }
    if (given("--seed")) cfg.seed = a.seed;
    if (given("--tol")) cfg.tol = a.tol;
    birat::finalize_config(cfg);
  } catch (const birat::Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kConfigError;
  }

  birat::RunResult result;
  try {
    result = birat::run_integration(cfg);
  } catch (const birat::ConfigError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kConfigError;
  }
  for (const auto& w : result.warnings) spdlog::warn("{}", w);
  spdlog::info("{}: {} states", result.trajectory.map_id, result.trajectory.size());

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!cfg.output.empty() && cfg.output != "-") {
    file.open(cfg.output);
    if (!file) {
      std::cerr << "error: output: cannot open " << cfg.output << "\n";
      return kConfigError;
    }
    os = &file;
  }
  if (cfg.format == birat::OutputFormat::Json) {
    birat::write_json(*os, result);
  } else {
    birat::write_csv(*os, result);
  }
  os->flush();
  if (!result.error.empty()) {
    std::cerr << "error: " << result.error << "\n";
    return kMapFailure;
  }
  return kOk;
}

int cmd_classify(const std::vector<std::string>& list, bool certify) {
  std::string joined;
  for (const auto& part : list) joined += (joined.empty() ? "" : ",") + part;
  try {
    const auto p = birat::LVParams::parse(joined);
    const auto report = birat::classify(p, certify);
    std::cout << birat::to_json(report, p).dump(2) << "\n";
    bool positive = !report.birational_cases.empty();
    if (report.certificate) {
      positive = positive && report.certificate->verdict == birat::CertificateVerdict::Birational;
    }
    return positive ? kOk : kNegative;
  } catch (const birat::Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kConfigError;
  }
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::optional<double> tol) {
  if (!birat::is_suite(suite)) {
    std::cerr << "error: unknown suite '" << suite << "'\n";
    return kConfigError;
  }
  birat::VerifyOptions opts;
  opts.seed = seed;
  opts.tol = tol;
  const auto report = birat::run_suite(suite, opts);
  for (const auto& c : report.checks) {
    spdlog::info("{} {} value={}", c.passed ? "PASS" : "FAIL", c.name, c.value);
  }
  std::cout << birat::to_json(report).dump(2) << "\n";
  return report.all_passed() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Kahan and Lotka-Volterra discretizations: integrate, classify, verify"};
  app.require_subcommand(1);

  IntegrateArgs ia;
  auto* integ = app.add_subcommand("integrate", "Iterate a map and write the trajectory");
  integ->set_help_flag("--help", "Print this help message and exit");
  integ->add_option("--config", ia.config, "JSON file with run settings (flags override it)");
  integ->add_option("--model", ia.model, "enzyme4 | enzyme3 | lv | schnakenberg");
  integ->add_option("--method", ia.method, "kahan | kahan-series:K | lv-family | schnakenberg | euler");
  integ->add_option("--params", ia.params, "key=value,... or a ten-entry lv-family list");
  integ->add_option("--h", ia.h, "step size");
  integ->add_option("--steps", ia.steps, "number of steps");
  integ->add_option("--x0", ia.x0, "initial state, comma separated");
  integ->add_option("--output", ia.output, "output path (default stdout)");
  integ->add_option("--format", ia.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  integ->add_option("--seed", ia.seed, "seed");
  integ->add_option("--tol", ia.tol, "elimination tolerance for lv-family");

  std::vector<std::string> cls_list;
  bool certify = false;
  auto* cls = app.add_subcommand("classify", "Classify a ten-entry parameter list");
  cls->add_option("params", cls_list, "{a,b,c,d,e,A,B,C,D,E}")->required()->allow_extra_args();
  cls->add_flag("--certify", certify, "attach the exact symbolic certificate");

  std::string suite;
  std::uint64_t seed = 7;
  std::optional<double> tol;
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", suite, "conservation | symplectic | roundtrip | convergence | multipliers | all")
      ->required();
  ver->add_option("--seed", seed, "sampling seed");
  ver->add_option("--tol", tol, "residual threshold for symplectic and roundtrip checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (*integ) return cmd_integrate(ia, *integ);
  if (*cls) return cmd_classify(cls_list, certify);
  return cmd_verify(suite, seed, tol);
}
