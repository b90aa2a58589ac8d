#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "experiment.hpp"

using namespace lapnum;
using namespace lapnum::detail;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lapnum-config-test-" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(kInf) == "inf");
  CHECK(format_double(-kInf) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
  Json j = Json::object();
  j["b"] = 1.5;
  j["a"] = Json::array({kInf, 0.1});
  const std::string text = dump_json(j);
  CHECK(text.find("\"b\"") < text.find("\"a\""));
  CHECK(text.find("\"inf\"") != std::string::npos);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.back() == '\n');
  CHECK(Json::parse(text)["b"] == 1.5);
}

TEST_CASE("defaults") {
  const ExperimentConfig cfg = parse_config(ConfigSource{});
  REQUIRE(cfg.fixtures.size() == 1);
  CHECK(cfg.fixtures[0].name == "W1");
  CHECK(cfg.fixtures[0].weight(0.5) == doctest::Approx(0.5));
  CHECK(cfg.epsilon == std::vector<double>{0.4, 0.2, 0.1});
  CHECK(cfg.seed == 1);
  CHECK(cfg.intervals.size() == 4);
}

TEST_CASE("document and overrides") {
  ConfigSource src = load_config_text(R"({
    "fixtures": [{"name": "a", "weight": [{"lo": 1, "hi": "inf", "coeff": 1, "exp": -2}], "p": 3, "q": 2},
                 {"name": "b", "weight": [{"lo": 0, "hi": 1, "coeff": 2, "exp": 0}]}],
    "s": [3, 4], "seed": 5})");
  ExperimentConfig cfg = parse_config(src);
  REQUIRE(cfg.fixtures.size() == 2);
  CHECK(cfg.fixtures[0].p == 3.0);
  CHECK(cfg.fixtures[1].weight(0.5) == 2.0);
  CHECK(cfg.s_list == std::vector<double>{3, 4});
  set_override(src, "q", "1");
  set_override(src, "fixture", "\"b\"");
  cfg = parse_config(src);
  REQUIRE(cfg.fixtures.size() == 1);
  CHECK(cfg.fixtures[0].name == "b");
  CHECK(cfg.fixtures[0].q == 1.0);
  set_override(src, "fixture", "\"chi01\"");
  CHECK(parse_config(src).fixtures[0].name == "chi01");
}

TEST_CASE("malformed configurations are rejected") {
  auto config_error = [](const std::string& text) {
    try {
      parse_config(load_config_text(text));
    } catch (const Error& e) {
      return e.code() == ErrorCode::Config;
    }
    return false;
  };
  CHECK(config_error("{"));
  CHECK(config_error(R"({"colour": 1})"));
  CHECK(config_error(R"({"p": "two"})"));
  CHECK(config_error(R"({"p": 0.5})"));
  CHECK(config_error(R"({"weight": [{"lo": 1, "hi": 0, "coeff": 1, "exp": 0}]})"));
  CHECK(config_error(R"({"weight": [{"lo": 0, "hi": 1, "coeff": 1}]})"));
  CHECK(config_error(R"({"fixtures": [{"name": "x", "weight": [], "shape": 1}]})"));
  CHECK(config_error(R"({"fixture": "nope"})"));
  CHECK(config_error(R"({"epsilon": [0.1, 0]})"));
  CHECK(config_error(R"({"weight": [{"lo": 0, "hi": 1, "coeff": 1, "exp": -1}]})"));
}

TEST_CASE("unknown subcommand and config errors write nothing") {
  const fs::path dir = scratch_dir("errors");
  ConfigSource src;
  set_override(src, "output_dir", Json(dir.string()).dump());
  CHECK(run_subcommand("frobnicate", src).exit_code == 2);
  set_override(src, "p", "-1");
  CHECK(run_subcommand("criteria", src).exit_code == 2);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("reports are written per fixture and are reproducible") {
  const fs::path dir = scratch_dir("reports");
  ConfigSource src;
  set_override(src, "output_dir", Json(dir.string()).dump());
  set_override(src, "fixtures",
               R"([{"name": "W1", "weight": [{"lo": 0, "hi": 1, "coeff": 1, "exp": 1}]},
                   {"name": "sq", "weight": [{"lo": 0, "hi": 1, "coeff": 1, "exp": 2}], "p": 2, "q": 1}])");
  const RunOutcome first = run_subcommand("criteria", src);
  REQUIRE(first.exit_code == 0);
  REQUIRE(first.files.size() == 2);
  const std::string a = slurp(first.files[0]);
  const Json doc = Json::parse(a);
  CHECK(doc["subcommand"] == "criteria");
  CHECK(doc["fixture"] == "W1");
  CHECK(doc["result"]["hilbert_schmidt"].get<double>() == doctest::Approx(0.5));
  CHECK(Json::parse(slurp(first.files[1]))["result"]["norm"]["value"].get<double>() ==
        doctest::Approx(1.0 / std::sqrt(3.0)));
  const RunOutcome second = run_subcommand("criteria", src);
  CHECK(slurp(second.files[0]) == a);
  fs::remove_all(dir);
}

TEST_CASE("per-fixture failures are reported in the document") {
  const fs::path dir = scratch_dir("fixture-error");
  ConfigSource src;
  set_override(src, "output_dir", Json(dir.string()).dump());
  set_override(src, "weight", R"([{"lo": 0, "hi": "inf", "coeff": 1, "exp": 0}])");
  const RunOutcome out = run_subcommand("partition", src);
  CHECK(out.exit_code == 0);
  REQUIRE(out.files.size() >= 1);
  const Json doc = Json::parse(slurp(out.files[0]));
  REQUIRE(doc["result"]["partitions"].size() == 3);
  CHECK(doc["result"]["partitions"][0].contains("error"));
  fs::remove_all(dir);
}
