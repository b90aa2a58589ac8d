#pragma once

// Configuration-driven experiment runner behind lapnum_run().

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json_text.hpp"
#include "lapnum/kernel.hpp"
#include "lapnum/localnorm.hpp"
#include "lapnum/weight.hpp"

namespace lapnum::detail {

struct FixtureConfig {
  std::string name;
  Json weight_spec;
  Weight weight;
  double p = 2.0, q = 2.0, lambda = 1.0;
};

struct ExperimentConfig {
  std::vector<FixtureConfig> fixtures;
  std::vector<double> s_list{2.0};
  std::vector<double> epsilon{0.4, 0.2, 0.1};
  std::optional<std::pair<int, int>> k_range;
  std::vector<int> oracle_sizes{256};
  std::vector<Interval> intervals;
  std::string output_dir = "lapnum-out";
  std::uint64_t seed = 1;
  int lemma_samples = 1000;
};

/// Raw configuration text plus key overrides, merged and validated by parse_config.
struct ConfigSource {
  Json document = Json::object();
  Json overrides = Json::object();
};

/// Throws Error(ErrorCode::Config) on malformed input or unknown keys.
ConfigSource load_config_text(const std::string& text);
void set_override(ConfigSource& src, const std::string& key, const std::string& value_json);
ExperimentConfig parse_config(const ConfigSource& src);

struct RunOutcome {
  int exit_code = 0;  // 0 success, 1 verification failure, 2 configuration error
  std::vector<std::string> files;
  std::string message;
};

extern const std::vector<std::string> kSubcommands;

/// Runs a subcommand over every fixture (in parallel, LS_THREADS workers) and
/// writes `<subcommand>-<fixture>.{json,csv}` into the output directory.
RunOutcome run_subcommand(const std::string& subcommand, const ConfigSource& src);

}  // namespace lapnum::detail
