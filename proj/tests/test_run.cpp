#include "birat/run.hpp"
#include "birat/verify.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace birat;

namespace {

RunConfig lv_config() {
  RunConfig cfg;
  cfg.model = "lv";
  cfg.method = "lv-family";
  cfg.params = parse_param_list("1/2,0,3/2,-1/2,0,1/2,4/5,0,1/5,0");
  cfg.h = 0.01;
  cfg.steps = 50;
  cfg.x0 = {2.0, 0.5};
  finalize_config(cfg);
  return cfg;
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Run, ParamLists) {
  const auto kv = parse_param_list("mu=0.5,nu=3/5");
  EXPECT_EQ(kv.at("nu"), "3/5");
  const auto pos = parse_param_list("{2,0,0,0,1,0,0,-1,0,2}");
  EXPECT_EQ(pos.size(), 10u);
  EXPECT_EQ(pos.at("7"), "-1");
  EXPECT_THROW(parse_param_list("mu=1,nu"), ConfigError);
}

TEST(Run, ValidationNamesField) {
  RunConfig cfg;
  cfg.steps = 0;
  try {
    finalize_config(cfg);
    FAIL();
  } catch (const ConfigError& ex) {
    EXPECT_EQ(std::string(ex.what()).rfind("steps", 0), 0u);
  }
  cfg.steps = 1;
  cfg.h = 0;
  EXPECT_THROW(finalize_config(cfg), ConfigError);
  cfg.h = 0.1;
  cfg.x0 = {1, 2, 3};
  EXPECT_THROW(finalize_config(cfg), ConfigError);
  cfg.x0.clear();
  cfg.model = "nope";
  EXPECT_THROW(finalize_config(cfg), ConfigError);
}

TEST(Run, Defaults) {
  RunConfig cfg;
  cfg.model = "enzyme3";
  finalize_config(cfg);
  EXPECT_EQ(cfg.x0, (std::vector<double>{1, 0, 0}));
  cfg = RunConfig{};
  cfg.model = "schnakenberg";
  cfg.method = "schnakenberg";
  finalize_config(cfg);
  EXPECT_NEAR(cfg.x0[0], 0.61, 1e-15);
}

TEST(Run, MethodCompatibility) {
  RunConfig cfg;
  cfg.model = "enzyme3";
  cfg.method = "lv-family";
  finalize_config(cfg);
  EXPECT_THROW(prepare_run(cfg), ConfigError);
  cfg.method = "kahan-series:x";
  EXPECT_THROW(prepare_run(cfg), ConfigError);
  cfg.method = "kahan-series:3";
  EXPECT_NO_THROW(prepare_run(cfg));
  cfg.params = {{"bogus", "1"}};
  EXPECT_THROW(prepare_run(cfg), ConfigError);
}

TEST(Run, EnzymeWarning) {
  RunConfig cfg;
  cfg.model = "enzyme3";
  cfg.h = 0.1;
  finalize_config(cfg);
  EXPECT_EQ(prepare_run(cfg).warnings.size(), 1u);
}

TEST(Run, CsvAndJsonAgree) {
  const auto result = run_integration(lv_config());
  std::ostringstream csv, js;
  write_csv(csv, result);
  write_json(js, result);
  EXPECT_EQ(csv.str().substr(0, 6), "t,x,y\n");
  const auto rows = csv_rows(csv.str());
  const auto j = nlohmann::json::parse(js.str());
  ASSERT_EQ(rows.size(), j.at("rows").size());
  ASSERT_EQ(rows.size(), 51u);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(rows[k][c], j["rows"][k][c].get<double>());
  }
}

TEST(Run, Deterministic) {
  std::ostringstream a, b;
  write_csv(a, run_integration(lv_config()));
  write_csv(b, run_integration(lv_config()));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Run, FailureLeavesErrorTrailer) {
  RunConfig cfg;
  cfg.model = "lv";
  cfg.method = "kahan";
  cfg.h = 2.0;
  cfg.steps = 5;
  cfg.x0 = {1.0, 0.0};  // 1 - h/2 (1 - y) = 0
  finalize_config(cfg);
  const auto r = run_integration(cfg);
  EXPECT_FALSE(r.error.empty());
  std::ostringstream js;
  write_json(js, r);
  EXPECT_TRUE(nlohmann::json::parse(js.str()).contains("error"));
}

TEST(Run, ConfigJson) {
  RunConfig cfg;
  apply_config_json(cfg, nlohmann::json::parse(
                             R"({"model":"enzyme3","params":{"mu":0.5,"nu":"3/5"},"h":0.001,"steps":3,"format":"json"})"));
  EXPECT_EQ(cfg.model, "enzyme3");
  EXPECT_EQ(cfg.params.at("nu"), "3/5");
  EXPECT_EQ(cfg.format, OutputFormat::Json);
  EXPECT_THROW(apply_config_json(cfg, nlohmann::json::parse(R"({"format":"xml"})")), ConfigError);
  EXPECT_THROW(apply_config_json(cfg, nlohmann::json::parse(R"({"h":"big"})")), ConfigError);
}

TEST(Run, FormatNumber) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Verify, SuitesAndUnknown) {
  EXPECT_TRUE(is_suite("all"));
  EXPECT_FALSE(is_suite("other"));
  const auto r = run_suite("multipliers");
  EXPECT_TRUE(r.all_passed());
  const auto s = run_suite("symplectic", {7, std::nullopt});
  EXPECT_TRUE(s.all_passed());
  EXPECT_TRUE(s.checks.back().expected_fail);
  const auto j = to_json(s);
  EXPECT_EQ(j.at("checks").size(), 4u);
}
