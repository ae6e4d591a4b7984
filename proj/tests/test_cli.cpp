#include "amp/cli.hpp"

#include "amp/affine_hecke.hpp"
#include "amp/basics.hpp"
#include "amp/rootdata.hpp"

#include "doctest.h"
#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using amp::RunConfig;
using Json = nlohmann::json;

namespace {

std::string run_capture(const RunConfig& config, int expected_exit = 0) {
  std::ostringstream out;
  const int code = amp::run(config, out);
  CHECK(code == expected_exit);
  return out.str();
}

Json run_json(const RunConfig& config, int expected_exit = 0) {
  return Json::parse(run_capture(config, expected_exit));
}

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::vector<const char*> argv;
  argv.push_back("amptool");
  for (const auto& arg : args) argv.push_back(arg.c_str());
  std::ostringstream out, err;
  const int code = amp::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

// Writes `text` to a scratch file and removes it when the guard dies.
struct ScratchFile {
  std::filesystem::path path;
  explicit ScratchFile(const std::string& name, const std::string& text)
      : path(std::filesystem::temp_directory_path() / name) {
    std::ofstream out(path);
    out << text;
  }
  ~ScratchFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("argument parsing fills the run configuration") {
  const RunConfig coset = amp::parse_args(
      {"coset-count", "--type", "A2", "--lambda", "-1,2", "--q", "7", "--output", "csv"});
  CHECK(coset.command == "coset-count");
  CHECK(coset.datum_type == "A2");
  CHECK(coset.lambda == amp::IntVec{-1, 2});
  CHECK(coset.q == 7);
  CHECK(coset.output == "csv");

  const RunConfig defaults = amp::parse_args({"verify-arch"});
  CHECK(defaults.command == "verify-arch");
  CHECK(defaults.model == "h3");
  CHECK(defaults.suite == "all");
  CHECK(defaults.seed == 42);
  CHECK(defaults.output == "json");

  const RunConfig plan = amp::parse_args({"amplifier-plan", "--pair", "su21", "--P", "100"});
  CHECK(plan.pair_label == "su21");
  CHECK(plan.big_p == 100);
  CHECK(plan.amp_a == "10");
  CHECK(plan.delta0 == "1");
  CHECK(plan.eta == "1");
  CHECK(plan.epsilon == "1/8");

  const RunConfig tuned = amp::parse_args({"amplifier-plan", "--pair", "su21", "--P", "20", "--A",
                                           "7/2", "--delta0", "2", "--epsilon", "1/4", "--json"});
  CHECK(tuned.amp_a == "7/2");
  CHECK(tuned.delta0 == "2");
  CHECK(tuned.epsilon == "1/4");
  CHECK(tuned.output == "json");
}

TEST_CASE("argument errors are rejected as invalid input") {
  CHECK_THROWS_AS(amp::parse_args({}), amp::invalid_input);
  CHECK_THROWS_AS(amp::parse_args({"bogus-command"}), amp::invalid_input);
  CHECK_THROWS_AS(amp::parse_args({"catalog", "--bogus"}), amp::invalid_input);
  CHECK_THROWS_AS(amp::parse_args({"analyze-pair"}), amp::invalid_input);  // --pair required
  CHECK_THROWS_AS(amp::parse_args({"coset-count", "--type", "A2", "--lambda", "1,x"}),
                  amp::invalid_input);
  CHECK_THROWS_AS(amp::parse_args({"coset-count", "--type", "A2", "--lambda", ""}),
                  amp::invalid_input);
  CHECK_THROWS_AS(amp::parse_args({"coset-count", "--type", "A2", "--lambda", "1,"}),
                  amp::invalid_input);
  CHECK_THROWS_AS(amp::parse_args({"coset-count", "--type", "A2", "--lambda", "1", "--q", "abc"}),
                  amp::invalid_input);
  CHECK_THROWS_AS(amp::parse_args({"catalog", "--output", "yaml"}), amp::invalid_input);
  CHECK_THROWS_AS(amp::parse_args({"verify-arch", "--model", "h4"}), amp::invalid_input);
  CHECK_THROWS_AS(amp::parse_args({"verify-arch", "--seed", "-1"}), amp::invalid_input);
  CHECK_THROWS_AS(amp::parse_args({"--help"}), amp::invalid_input);  // only run_cli honors help
}

TEST_CASE("run validates the configuration before dispatch") {
  RunConfig config;
  config.command = "nonsense";
  std::ostringstream out;
  CHECK_THROWS_AS(amp::run(config, out), amp::invalid_input);

  config = RunConfig{};
  config.command = "coset-count";
  config.datum_type = "A2";
  config.lambda = {1, 0};
  config.q = 1;  // too small
  CHECK_THROWS_AS(amp::run(config, out), amp::invalid_input);

  config.q = 3;
  config.output = "yaml";
  CHECK_THROWS_AS(amp::run(config, out), amp::invalid_input);

  config = RunConfig{};
  config.command = "amplifier-plan";
  config.pair_label = "su21";
  config.big_p = 1;  // too small
  CHECK_THROWS_AS(amp::run(config, out), amp::invalid_input);
}

TEST_CASE("catalog report lists every pair with classification and largeness") {
  RunConfig config;
  config.command = "catalog";
  const Json doc = run_json(config);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["command"] == "catalog");
  CHECK(doc["pairs"].size() >= 12);
  CHECK(doc["count"] == doc["pairs"].size());

  bool saw_mr = false, saw_split = false;
  for (const auto& entry : doc["pairs"]) {
    for (const char* key : {"label", "group", "subgroup", "classification", "theta_split_rank",
                            "levi_is_torus", "h_large", "witness", "margin"})
      CHECK(entry.contains(key));
    const std::string tag = entry["classification"];
    CHECK((tag == "ST" || tag == "T" || tag == "NT"));
    // A witness travels with every H-large verdict, and only with those.
    CHECK(entry["h_large"].is_boolean());
    CHECK(entry["witness"].is_array() == entry["h_large"].get<bool>());
    if (entry["label"] == "maclachlan-reid") {
      saw_mr = true;
      CHECK(tag == "T");
      CHECK(entry["h_large"] == true);
      CHECK(entry["margin"] == "0");
    }
    if (entry["label"] == "split-control") {
      saw_split = true;
      CHECK(tag == "ST");
      CHECK(entry["h_large"] == false);
      CHECK(entry["margin"].is_null());
    }
  }
  CHECK(saw_mr);
  CHECK(saw_split);

  // Byte-identical across runs: no timestamps, canonical key order.
  CHECK(run_capture(config) == run_capture(config));
}

TEST_CASE("analyze-pair reports the largeness verdict and classification") {
  RunConfig config;
  config.command = "analyze-pair";
  config.pair_label = "maclachlan-reid";
  const Json mr = run_json(config);
  CHECK(mr["schema_version"] == 1);
  CHECK(mr["pair"] == "maclachlan-reid");
  CHECK(mr["h_large"] == true);
  CHECK(mr["classification"] == "T");
  CHECK(mr["theta_split_rank"] == 1);
  CHECK(mr["witness"].is_array());
  CHECK(mr["margin"] == "0");
  CHECK(mr["witness_norm_h"].is_string());
  CHECK(mr["witness_norm_g"].is_string());

  config.pair_label = "split-control";
  const Json split = run_json(config);
  CHECK(split["h_large"] == false);
  CHECK(split["classification"] == "ST");
  CHECK(split["witness"].is_null());
  CHECK(split["margin"].is_null());

  config.pair_label = "nonexistent";
  std::ostringstream out;
  CHECK_THROWS_AS(amp::run(config, out), amp::invalid_input);
}

TEST_CASE("coset-count matches the library and renders exact rationals") {
  RunConfig config;
  config.command = "coset-count";
  config.datum_type = "GL2";
  config.lambda = {1, 0};
  config.q = 5;
  const Json gl2 = run_json(config);
  CHECK(gl2["schema_version"] == 1);
  CHECK(gl2["type"] == "GL2");
  CHECK(gl2["value"] == 6);
  CHECK(gl2["polynomial"] == Json::array({1, 1}));
  CHECK(gl2["norm_star"] == "1/2");
  CHECK(gl2["ratio"] == "6/5");

  config.datum_type = "A2";
  config.lambda = {2, 1};
  config.q = 3;
  const Json a2 = run_json(config);
  const amp::RootDatum rd = amp::build_root_datum("A2");
  const amp::HeckeCountPolynomial poly = amp::double_coset_count(rd, {2, 1});
  CHECK(a2["value"] == static_cast<long long>(amp::evaluate_count(poly, 3).get_si()));
  REQUIRE(a2["polynomial"].size() == poly.coeffs.size());
  for (std::size_t i = 0; i < poly.coeffs.size(); ++i)
    CHECK(a2["polynomial"][i] == static_cast<long long>(poly.coeffs[i].get_si()));
  CHECK(a2["weyl_divisor"].is_array());
  CHECK(a2["ratio"].is_string());

  // Wrong number of coordinates for the rank.
  config.lambda = {1};
  std::ostringstream out;
  CHECK_THROWS_AS(amp::run(config, out), amp::invalid_input);
}

TEST_CASE("amplifier-plan reports places, period bounds, and the budget") {
  RunConfig config;
  config.command = "amplifier-plan";
  config.pair_label = "su21";
  config.big_p = 100;
  const Json doc = run_json(config);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["h_large"] == true);
  CHECK(doc["degenerate"] == false);
  CHECK(doc["S"] == Json::array({53, 59, 61, 67, 71, 73, 79, 83, 89, 97}));
  CHECK(doc["nu"].is_array());
  CHECK(doc["budget"]["c"] == "1/20");
  CHECK(doc["budget"]["delta"] == "7/320");
  CHECK(doc["budget"]["grid_certified"] == true);
  CHECK(doc["period_bounds"].size() == 10);
  for (const auto& [q, bound] : doc["period_bounds"].items()) {
    CHECK(bound["base"] == std::stoll(q));
    CHECK(bound["exponent"].is_string());
  }
  CHECK(doc["plan"]["support_exponent_B"].is_string());
  CHECK(doc["plan"]["k_S_at_identity"].is_string());

  // Exact H-side period values are available for the diagonal SL2 pair.
  config.pair_label = "maclachlan-reid";
  config.big_p = 10;
  const Json mr = run_json(config);
  CHECK(mr["S"] == Json::array({5, 7}));
  for (const auto& [q, bound] : mr["period_bounds"].items()) CHECK(bound["exact"].is_string());

  // S empty is reported, not an error.
  config.pair_label = "su21";
  config.big_p = 2;
  const Json degenerate = run_json(config);
  CHECK(degenerate["degenerate"] == true);
  CHECK(degenerate["S"].empty());

  // Not H-large is data, not an error.
  config.pair_label = "split-control";
  config.big_p = 100;
  const Json split = run_json(config);
  CHECK(split["h_large"] == false);
  CHECK(split["plan"].is_null());
  CHECK(split["budget"].is_null());

  // Malformed rational parameters.
  config.pair_label = "su21";
  std::ostringstream out;
  config.amp_a = "1/0";
  CHECK_THROWS_AS(amp::run(config, out), amp::invalid_input);
  config.amp_a = "abc";
  CHECK_THROWS_AS(amp::run(config, out), amp::invalid_input);
  config.amp_a = "10";
  config.epsilon = "2/";
  CHECK_THROWS_AS(amp::run(config, out), amp::invalid_input);
}

TEST_CASE("verify-arch emits one report per check and is deterministic") {
  RunConfig config;
  config.command = "verify-arch";
  config.suite = "displacement";
  const Json one = run_json(config);
  CHECK(one["schema_version"] == 1);
  CHECK(one["model"] == "h3");
  CHECK(one["seed"] == 42);
  CHECK(one["pass"] == true);
  REQUIRE(one["reports"].size() == 1);
  const Json& report = one["reports"][0];
  for (const char* key : {"suite", "pass", "worst_case", "grid", "fitted_constants"})
    CHECK(report.contains(key));
  CHECK(report["suite"] == "displacement");
  CHECK(report["pass"] == true);
  CHECK(report["fitted_constants"].is_object());
  CHECK(report["grid"].is_string());

  config.suite = "all";
  const Json h3 = run_json(config);
  CHECK(h3["reports"].size() == 8);
  CHECK(h3["pass"] == true);

  config.model = "h2";
  const Json h2 = run_json(config);
  CHECK(h2["reports"].size() == 6);
  CHECK(h2["pass"] == true);

  // Same config and seed reproduce the same bytes.
  CHECK(run_capture(config) == run_capture(config));

  config.suite = "nonsense";
  std::ostringstream out;
  CHECK_THROWS_AS(amp::run(config, out), amp::invalid_input);
  config.model = "h2";
  config.suite = "kxi";  // only defined on the three-dimensional model
  CHECK_THROWS_AS(amp::run(config, out), amp::invalid_input);
}

TEST_CASE("config files drive runs and unknown keys are rejected") {
  const ScratchFile good("amp_cli_good.json",
                         R"({"config_version": 1, "command": "coset-count",
                             "type": "GL2", "lambda": [1, 0], "q": 5, "output": "json"})");
  const RunConfig config = amp::parse_config_file(good.path.string());
  CHECK(config.command == "coset-count");
  CHECK(config.lambda == amp::IntVec{1, 0});
  const Json doc = run_json(config);
  CHECK(doc["value"] == 6);

  std::string out_text;
  CHECK(cli({"--config", good.path.string()}, &out_text) == 0);
  CHECK(Json::parse(out_text)["value"] == 6);

  // Rational parameters may be integers or "p/q" strings.
  const ScratchFile plan("amp_cli_plan.json",
                         R"({"config_version": 1, "command": "amplifier-plan",
                             "pair": "su21", "P": 100, "A": 10, "epsilon": "1/4"})");
  const RunConfig plan_config = amp::parse_config_file(plan.path.string());
  CHECK(plan_config.amp_a == "10");
  CHECK(plan_config.epsilon == "1/4");
  CHECK(plan_config.big_p == 100);

  const ScratchFile unknown("amp_cli_unknown.json",
                            R"({"config_version": 1, "command": "catalog", "bogus": 3})");
  CHECK_THROWS_AS(amp::parse_config_file(unknown.path.string()), amp::invalid_input);

  const ScratchFile wrong_version("amp_cli_v2.json",
                                  R"({"config_version": 2, "command": "catalog"})");
  CHECK_THROWS_AS(amp::parse_config_file(wrong_version.path.string()), amp::invalid_input);

  const ScratchFile no_version("amp_cli_nover.json", R"({"command": "catalog"})");
  CHECK_THROWS_AS(amp::parse_config_file(no_version.path.string()), amp::invalid_input);

  const ScratchFile no_command("amp_cli_nocmd.json", R"({"config_version": 1})");
  CHECK_THROWS_AS(amp::parse_config_file(no_command.path.string()), amp::invalid_input);

  const ScratchFile not_json("amp_cli_broken.json", "{not json");
  CHECK_THROWS_AS(amp::parse_config_file(not_json.path.string()), amp::invalid_input);

  const ScratchFile bad_type("amp_cli_badtype.json",
                             R"({"config_version": 1, "command": "coset-count",
                                 "type": "A2", "lambda": "1,0"})");
  CHECK_THROWS_AS(amp::parse_config_file(bad_type.path.string()), amp::invalid_input);

  const ScratchFile bad_rat("amp_cli_badrat.json",
                            R"({"config_version": 1, "command": "amplifier-plan",
                                "pair": "su21", "P": 10, "A": 2.5})");
  CHECK_THROWS_AS(amp::parse_config_file(bad_rat.path.string()), amp::invalid_input);

  CHECK_THROWS_AS(amp::parse_config_file("/nonexistent/amp_cli_missing.json"),
                  amp::invalid_input);

  // --config replaces the subcommand; mixing them is an error.
  CHECK_THROWS_AS(amp::parse_args({"--config", good.path.string(), "catalog"}),
                  amp::invalid_input);
}

TEST_CASE("run_cli maps outcomes and exceptions to exit codes") {
  std::string out_text, err_text;
  CHECK(cli({"analyze-pair", "--pair", "split-control", "--json"}, &out_text, &err_text) == 0);
  CHECK(err_text.empty());
  const Json split = Json::parse(out_text);
  CHECK(split["h_large"] == false);
  CHECK(split["classification"] == "ST");

  CHECK(cli({"analyze-pair", "--pair", "nonexistent"}, &out_text, &err_text) == 2);
  CHECK(err_text.find("invalid input:") == 0);

  CHECK(cli({"coset-count", "--type", "A2", "--lambda", "1,0", "--q", "1"}, &out_text,
            &err_text) == 2);
  CHECK(err_text.find("at least 2") != std::string::npos);

  CHECK(cli({}, &out_text, &err_text) == 2);
  CHECK(err_text.find("invalid input:") == 0);

  CHECK(cli({"--help"}, &out_text, &err_text) == 0);
  CHECK(out_text.find("Usage: amptool") != std::string::npos);
  CHECK(out_text.find("catalog") != std::string::npos);

  CHECK(cli({"coset-count", "--help"}, &out_text, &err_text) == 0);
  CHECK(out_text.find("--lambda") != std::string::npos);
}

TEST_CASE("csv and text outputs render the same data") {
  RunConfig config;
  config.command = "coset-count";
  config.datum_type = "GL2";
  config.lambda = {1, 0};
  config.q = 5;
  config.output = "csv";
  const std::string csv = run_capture(config);
  CHECK(csv == "type,lambda,q,value,norm_star,ratio,polynomial\nGL2,1 0,5,6,1/2,6/5,1 1\n");

  config.output = "text";
  const std::string text = run_capture(config);
  CHECK(text.find("value: 6") != std::string::npos);
  CHECK(text.find("ratio: 6/5") != std::string::npos);

  config = RunConfig{};
  config.command = "catalog";
  config.output = "csv";
  const std::string catalog_csv = run_capture(config);
  CHECK(catalog_csv.find("label,group,subgroup,classification,") == 0);
  // Header plus one row per pair.
  CHECK(std::count(catalog_csv.begin(), catalog_csv.end(), '\n') >= 13);

  config.command = "analyze-pair";
  config.pair_label = "maclachlan-reid";
  config.output = "text";
  const std::string pair_text = run_capture(config);
  CHECK(pair_text.find("classification: T") != std::string::npos);
  CHECK(pair_text.find("h_large: yes") != std::string::npos);

  config = RunConfig{};
  config.command = "verify-arch";
  config.suite = "tube";
  config.output = "csv";
  const std::string arch_csv = run_capture(config);
  CHECK(arch_csv.find("model,suite,pass,worst_case\nh3,tube,true,") == 0);

  config.output = "text";
  const std::string arch_text = run_capture(config);
  CHECK(arch_text.find("overall: pass") != std::string::npos);

  config = RunConfig{};
  config.command = "amplifier-plan";
  config.pair_label = "maclachlan-reid";
  config.big_p = 10;
  config.output = "csv";
  const std::string plan_csv = run_capture(config);
  CHECK(plan_csv.find("pair,h_large,q,exponent,exact\nmaclachlan-reid,true,5,") == 0);

  config.pair_label = "split-control";
  const std::string split_csv = run_capture(config);
  CHECK(split_csv == "pair,h_large,q,exponent,exact\nsplit-control,false,,,\n");

  config.pair_label = "maclachlan-reid";
  config.output = "text";
  const std::string plan_text = run_capture(config);
  CHECK(plan_text.find("h_large: yes") != std::string::npos);
  CHECK(plan_text.find("budget: c = 1/20") != std::string::npos);
}
