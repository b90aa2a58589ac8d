// Command-line front end. Every flag overrides the config key of the same name.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lapnum/lapnum.h"

namespace {

constexpr int kConfigExit = 2;

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return *end == '\0';
}

// JSON text for a scalar flag value: numbers stay bare, "inf" and names are quoted.
std::string scalar_json(const std::string& s) { return looks_numeric(s) ? s : "\"" + s + "\""; }

std::string list_json(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + scalar_json(items[i]);
  return out + "]";
}

int report_status(lapnum_status st) {
  std::fprintf(stderr, "lapnum: %s\n", lapnum_last_error());
  return st == LAPNUM_CONFIG_ERROR || st == LAPNUM_INVALID_ARGUMENT ? kConfigExit : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norm bounds, compactness, approximation numbers and Schatten-type estimates "
               "for weighted Laplace-type operators"};
  app.require_subcommand(1, 1);

  std::string config_path, weight, p, q, lambda, output_dir, fixture;
  std::vector<std::string> s_list, eps_list, sizes;
  long long seed = -1;
  int samples = 0, k_lo = 0, k_hi = 0;
  bool have_k = false;

  const char* subs[][2] = {
      {"criteria", "two-sided norm bounds and compactness"},
      {"kbounds", "local norm bounds on intervals"},
      {"partition", "epsilon-partitions of the half-line"},
      {"an-curve", "approximation-number upper bounds over the epsilon grid"},
      {"schatten", "dyadic profile, Lambda/J quantities and Schatten-type bounds"},
      {"asymptotics", "asymptotic constant and the Hardy constant alpha_pq"},
      {"oracle", "discretized operator: singular values and norm estimate"},
      {"verify", "invariant suite; exit 1 on any violation"},
      {"all", "every subcommand above"},
  };
  for (auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s[0], s[1]);
    sub->add_option("-c,--config", config_path, "JSON config file");
    sub->add_option("--weight", weight, "weight as JSON list of {lo, hi, coeff, exp}");
    sub->add_option("--p", p, "source exponent p (number or inf)");
    sub->add_option("--q", q, "target exponent q (number or inf)");
    sub->add_option("--lambda", lambda, "kernel exponent lambda");
    sub->add_option("--s", s_list, "Schatten exponents")->delimiter(',');
    sub->add_option("--epsilon", eps_list, "epsilon grid")->delimiter(',');
    sub->add_option("--size", sizes, "oracle grid sizes")->delimiter(',');
    sub->add_option("--output-dir", output_dir, "report directory");
    sub->add_option("--fixture", fixture, "run only this fixture");
    sub->add_option("--seed", seed, "random seed")->check(CLI::NonNegativeNumber);
    sub->add_option("--samples", samples, "dyadic lemma samples per lemma")->check(CLI::PositiveNumber);
    auto* krange = sub->add_option_function<std::vector<int>>(
        "--k-range", [&](const std::vector<int>& v) { k_lo = v[0]; k_hi = v[1]; have_k = true; },
        "dyadic block range K_LO,K_HI");
    krange->expected(2)->delimiter(',');
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }
  const std::string subcommand = app.get_subcommands().front()->get_name();

  lapnum_config* cfg = nullptr;
  lapnum_status st;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::fprintf(stderr, "lapnum: cannot read %s\n", config_path.c_str());
      return kConfigExit;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    st = lapnum_config_from_json(buf.str().c_str(), &cfg);
  } else {
    st = lapnum_config_default(&cfg);
  }
  if (st != LAPNUM_OK) return report_status(st);

  std::vector<std::pair<std::string, std::string>> overrides;
  if (!weight.empty()) overrides.emplace_back("weight", weight);
  if (!p.empty()) overrides.emplace_back("p", scalar_json(p));
  if (!q.empty()) overrides.emplace_back("q", scalar_json(q));
  if (!lambda.empty()) overrides.emplace_back("lambda", scalar_json(lambda));
  if (!s_list.empty()) overrides.emplace_back("s", list_json(s_list));
  if (!eps_list.empty()) overrides.emplace_back("epsilon", list_json(eps_list));
  if (!sizes.empty()) overrides.emplace_back("oracle_sizes", list_json(sizes));
  if (!output_dir.empty()) overrides.emplace_back("output_dir", scalar_json(output_dir));
  if (!fixture.empty()) overrides.emplace_back("fixture", "\"" + fixture + "\"");
  if (seed >= 0) overrides.emplace_back("seed", std::to_string(seed));
  if (samples > 0) overrides.emplace_back("lemma_samples", std::to_string(samples));
  if (have_k) overrides.emplace_back("k_range", "[" + std::to_string(k_lo) + "," + std::to_string(k_hi) + "]");
  for (const auto& [key, value] : overrides) {
    st = lapnum_config_set(cfg, key.c_str(), value.c_str());
    if (st != LAPNUM_OK) {
      lapnum_config_destroy(cfg);
      return report_status(st);
    }
  }

  int exit_code = 0;
  st = lapnum_run(subcommand.c_str(), cfg, &exit_code);
  lapnum_config_destroy(cfg);
  if (st != LAPNUM_OK) {
    if (exit_code == 0) return report_status(st);
    std::fprintf(stderr, "lapnum: %s\n", lapnum_last_error());
    return exit_code;
  }
  std::fputs(lapnum_last_outputs(), stdout);
  if (exit_code != 0) std::fprintf(stderr, "lapnum: %s\n", lapnum_last_error());
  return exit_code;
}
