#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "lapnum/criteria.hpp"
#include "lapnum/oracle.hpp"
#include "lapnum/partition.hpp"
#include "lapnum/schatten.hpp"
#include "lapnum/verify.hpp"

namespace lapnum::detail {

const std::vector<std::string> kSubcommands{"criteria", "kbounds",     "partition", "an-curve", "schatten",
                                            "asymptotics", "oracle", "verify",    "all"};

namespace {

[[noreturn]] void config_error(const std::string& what) { fail(ErrorCode::Config, "config: " + what); }

// ---------------------------------------------------------------------------
// Parsing helpers

const std::set<std::string> kTopKeys{"fixtures", "fixture", "weight",        "p",    "q",
                                     "lambda",   "s",       "epsilon",       "k_range", "oracle_sizes",
                                     "intervals", "output_dir", "seed",      "lemma_samples"};
const std::set<std::string> kFixtureKeys{"name", "weight", "p", "q", "lambda"};
const std::set<std::string> kPieceKeys{"lo", "hi", "coeff", "exp"};

const std::map<std::string, std::vector<WeightPiece>>& builtin_weights() {
  static const std::map<std::string, std::vector<WeightPiece>> table{
      {"W1", {{0.0, 1.0, 1.0, 1.0}}},
      {"chi01", {{0.0, 1.0, 1.0, 0.0}}},
      {"y2chi", {{0.0, 1.0, 1.0, 2.0}}},
  };
  return table;
}

double number(const Json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity") return kInf;
  }
  config_error(what + " must be a number or \"inf\"");
}

int integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) config_error(what + " must be an integer");
  return j.get<int>();
}

std::vector<double> number_list(const Json& j, const std::string& what) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const Json& e : j) out.push_back(number(e, what));
  } else {
    out.push_back(number(j, what));
  }
  if (out.empty()) config_error(what + " must not be empty");
  return out;
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) config_error(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) config_error("unknown key \"" + it.key() + "\" in " + where);
}

Weight parse_weight(const Json& spec) {
  if (!spec.is_array()) config_error("weight must be a list of {lo, hi, coeff, exp} records");
  std::vector<WeightPiece> pieces;
  for (const Json& rec : spec) {
    reject_unknown(rec, kPieceKeys, "weight record");
    for (const char* k : {"lo", "hi", "coeff", "exp"})
      if (!rec.contains(k)) config_error(std::string("weight record is missing \"") + k + "\"");
    pieces.push_back({number(rec["lo"], "lo"), number(rec["hi"], "hi"), number(rec["coeff"], "coeff"),
                      number(rec["exp"], "exp")});
  }
  try {
    Weight w(pieces);
    w.require_locally_integrable();
    return w;
  } catch (const Error& e) {
    config_error(std::string("invalid weight: ") + e.what());
  }
}

Json builtin_spec(const std::string& name) {
  Json spec = Json::array();
  for (const WeightPiece& p : builtin_weights().at(name))
    spec.push_back(Json{{"lo", p.lo}, {"hi", std::isinf(p.hi) ? Json("inf") : Json(p.hi)}, {"coeff", p.coeff},
                        {"exp", p.exponent}});
  return spec;
}

Json merged_document(const ConfigSource& src) {
  Json doc = src.document;
  for (auto it = src.overrides.begin(); it != src.overrides.end(); ++it) doc[it.key()] = it.value();
  return doc;
}

// ---------------------------------------------------------------------------
// Report helpers

Json params_json(const FixtureConfig& fx) {
  const SpaceParams sp = derived_params(fx.p, fx.q, fx.lambda);
  Json j{{"p", fx.p}, {"q", fx.q}, {"lambda", fx.lambda}, {"p_conj", sp.p_conj}, {"delta", sp.delta},
         {"regime", regime_tag(sp.regime)}};
  if (sp.r) j["r"] = *sp.r;
  if (sp.theta) j["theta"] = *sp.theta;
  return j;
}

template <class F>
Json guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return Json{{"error", e.what()}};
  }
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  std::string text() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << "\n";
    }
    return os.str();
  }
};

std::string num(double x) { return format_double(x); }

struct Report {
  Json json;
  std::optional<Table> csv;
};

int oracle_size(const ExperimentConfig& cfg) { return cfg.oracle_sizes.front(); }

// ---------------------------------------------------------------------------
// Subcommands

Json bound_json(const BoundReport& r) {
  Json j{{"quantity", r.quantity_name}, {"value", r.value},         {"lower_const", r.lower_const},
         {"upper_const", r.upper_const}, {"lower_bound", r.lower_bound}, {"upper_bound", r.upper_bound},
         {"decision", to_string(r.decision)}, {"compactness", to_string(r.compactness)}, {"case", r.case_tag}};
  if (!r.secondary_name.empty()) {
    j["secondary_quantity"] = r.secondary_name;
    j["secondary_value"] = r.secondary_value;
  }
  j["witness"] = r.witness;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Report run_criteria(const FixtureConfig& fx, const ExperimentConfig&) {
  const SpaceParams sp = derived_params(fx.p, fx.q, fx.lambda);
  Report rep;
  rep.json["norm"] = guarded([&] { return bound_json(norm_criterion(sp, fx.weight)); });
  rep.json["compactness"] = guarded([&] { return Json(to_string(compactness_test(sp, fx.weight))); });
  rep.json["hilbert_schmidt"] = guarded([&] { return Json(hilbert_schmidt_exact(fx.lambda, fx.weight)); });
  return rep;
}

Report run_kbounds(const FixtureConfig& fx, const ExperimentConfig& cfg) {
  const SpaceParams sp = derived_params(fx.p, fx.q, fx.lambda);
  Report rep;
  Table t{{"a", "b", "lower", "upper", "lower_name", "upper_name", "exact"}, {}};
  Json arr = Json::array();
  for (const Interval& I : cfg.intervals) {
    Json row = guarded([&] {
      const KBounds kb = K_bounds(I, sp, fx.weight);
      t.add({num(I.a), num(I.b), num(kb.lower), num(kb.upper), kb.lower_name, kb.upper_name, kb.exact ? "1" : "0"});
      Json j{{"lower", kb.lower}, {"upper", kb.upper}, {"lower_name", kb.lower_name},
             {"upper_name", kb.upper_name}, {"exact", kb.exact}};
      if (!std::isnan(kb.lemma_lower)) j["lemma_lower"] = kb.lemma_lower;
      if (!std::isnan(kb.lemma_upper)) j["lemma_upper"] = kb.lemma_upper;
      return j;
    });
    arr.push_back(Json{{"interval", Json::array({I.a, I.b})}, {"bounds", row}});
  }
  rep.json["intervals"] = arr;
  rep.csv = t;
  return rep;
}

Report run_partition(const FixtureConfig& fx, const ExperimentConfig& cfg) {
  const SpaceParams sp = derived_params(fx.p, fx.q, fx.lambda);
  Report rep;
  Table t{{"epsilon", "n", "lo", "hi", "bound"}, {}};
  Json arr = Json::array();
  for (double eps : cfg.epsilon) {
    arr.push_back(guarded([&] {
      const Partition part = split(eps, sp, fx.weight);
      for (std::size_t n = 0; n < part.bounds.size(); ++n)
        t.add({num(eps), std::to_string(n), num(part.points[n]), num(part.points[n + 1]), num(part.bounds[n])});
      return Json{{"epsilon", eps},
                  {"N", part.N},
                  {"points", part.points},
                  {"bounds", part.bounds},
                  {"an_upper", an_upper(part, sp)},
                  {"orientation", part.orientation == Orientation::LeftToRight ? "left_to_right" : "right_to_left"},
                  {"surrogate", part.surrogate}};
    }));
  }
  rep.json["partitions"] = arr;
  rep.csv = t;
  return rep;
}

Report run_an_curve(const FixtureConfig& fx, const ExperimentConfig& cfg) {
  const SpaceParams sp = derived_params(fx.p, fx.q, fx.lambda);
  Report rep;
  std::vector<double> grid = cfg.epsilon;
  std::sort(grid.begin(), grid.end(), std::greater<>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<double> sv;
  if (fx.p == 2.0 && fx.q == 2.0) {
    GridSpec g;
    g.size = oracle_size(cfg);
    sv = singular_values(discretize(sp, fx.weight, g), g.size);
  }
  Table t{{"epsilon", "N", "n", "bound", "oracle_a_n"}, {}};
  rep.json["rows"] = guarded([&] {
    Json arr = Json::array();
    for (const AnRow& row : an_curve(grid, sp, fx.weight)) {
      Json j{{"epsilon", row.epsilon}, {"N", row.N}, {"n", row.n}, {"bound", row.bound}};
      std::string oracle;
      if (row.n - 1 < static_cast<int>(sv.size())) {
        j["oracle_a_n"] = sv[row.n - 1];
        oracle = num(sv[row.n - 1]);
      }
      t.add({num(row.epsilon), std::to_string(row.N), std::to_string(row.n), num(row.bound), oracle});
      arr.push_back(j);
    }
    return arr;
  });
  rep.csv = t;
  return rep;
}

Json equivalence_json(const EquivalenceCheck& e) {
  Json j{{"barred", e.barred},
         {"Lambda", e.Lambda},
         {"J", e.J},
         {"forward_const", e.forward_const},
         {"forward_holds", e.forward_holds},
         {"range", Json::array({e.l, e.m})},
         {"Lambda_range", e.Lambda_range},
         {"J_range", e.J_range},
         {"C1", e.C1},
         {"reverse_const", e.reverse_const},
         {"reverse_holds", e.reverse_holds},
         {"vacuous", e.vacuous}};
  if (!std::isnan(e.forward_const_printed)) j["forward_const_with_delta_power_1_over_q"] = e.forward_const_printed;
  return j;
}

Report run_schatten(const FixtureConfig& fx, const ExperimentConfig& cfg) {
  const SpaceParams sp = derived_params(fx.p, fx.q, fx.lambda);
  const bool barred = fx.p == 1.0;
  Report rep;
  Table t{{"k", "sigma_k", "tau_k"}, {}};
  const int k_lo = cfg.k_range ? cfg.k_range->first : 1, k_hi = cfg.k_range ? cfg.k_range->second : 0;
  std::optional<DyadicProfile> prof;
  rep.json["profile"] = guarded([&] {
    prof = sigma_profile(sp, fx.weight, k_lo, k_hi, barred);
    Json ks = Json::array(), sig = Json::array(), tau = Json::array();
    for (int k = prof->k_lo; k <= prof->k_hi; ++k) {
      ks.push_back(k);
      sig.push_back(prof->sigma_at(k));
      tau.push_back(prof->tau_at(k));
      t.add({std::to_string(k), num(prof->sigma_at(k)), num(prof->tau_at(k))});
    }
    return Json{{"barred", barred}, {"delta", prof->delta}, {"k", ks},         {"sigma", sig},
                {"tau", tau},       {"tail_exponent", prof->tail_s}, {"tail_bound", prof->tail_bound}};
  });
  Json per_s = Json::array();
  for (double s : cfg.s_list) {
    Json entry{{"s", s}};
    if (prof) {
      entry["Lambda_s"] = guarded([&] { return Json(Lambda_s(*prof, s)); });
      entry[barred ? "Jbar_s" : "J_s"] =
          guarded([&] { return Json(barred ? J_bar_s(sp, fx.weight, s) : J_s(sp, fx.weight, s)); });
      const int l = std::max(prof->k_lo, -40), m = std::min(prof->k_hi, 40) + 1;
      entry["equivalence"] = guarded([&] { return equivalence_json(lambda_J_equivalence_check(sp, fx.weight, s, l, m)); });
    }
    entry["upper_report"] = guarded([&] {
      const SchattenUpperReport r = schatten_upper_report(sp, fx.weight, s, oracle_size(cfg));
      Json j{{"weight_sequence", r.weight_sequence}, {"u_exponent", r.u_exponent}, {"quantity", r.quantity_name},
             {"quantity_exponent", r.quantity_exponent}, {"value", r.value}, {"statement", r.statement}};
      if (r.realized_ratio >= 0.0) {
        j["realized_ratio"] = r.realized_ratio;
        j["realized_terms"] = r.realized_terms;
      }
      return j;
    });
    if (fx.p == 2.0 && fx.q == 2.0) {
      entry["X_s"] = guarded([&] { return Json(schatten_X_alpha(s, fx.lambda, fx.weight)); });
      entry["remark_lower"] = guarded([&] {
        const int lo = prof ? std::max(prof->k_lo, -60) : -30, hi = prof ? std::min(prof->k_hi, 60) : 30;
        const RemarkCheck rc = remark_lower_check(s, fx.lambda, fx.weight, lo, hi, oracle_size(cfg));
        Json j{{"rhs", rc.rhs}, {"lhs_oracle", rc.lhs_oracle}, {"inner_product_sum", rc.inner_product_sum},
               {"holds", rc.holds}};
        if (rc.lhs_exact >= 0.0) j["lhs_exact"] = rc.lhs_exact;
        return j;
      });
    }
    per_s.push_back(entry);
  }
  rep.json["by_s"] = per_s;
  rep.csv = t;
  return rep;
}

Report run_asymptotics(const FixtureConfig& fx, const ExperimentConfig& cfg) {
  const SpaceParams sp = derived_params(fx.p, fx.q, fx.lambda);
  Report rep;
  std::optional<double> constant;
  rep.json["asymptotic_constant"] = guarded([&] {
    const AsymptoticReport a = asymptotic_constant(sp, fx.weight);
    constant = a.value;
    return Json{{"value", a.value}, {"side_condition", a.side_condition}, {"side_sum", a.side_sum}};
  });
  rep.json["alpha_pq"] = guarded([&] {
    return Json{{"closed_form", alpha_pq(fx.p, fx.q)},
                {"sup_oracle", alpha_pq_sup_oracle(fx.p, fx.q, oracle_size(cfg))},
                {"hardy_unit_interval", hardy_const_norm(1.0, 1.0, Interval{0.0, 1.0}, fx.p, fx.q)}};
  });
  Table t{{"n", "a_n", "scaled", "ratio_to_constant"}, {}};
  if (fx.p == 2.0 && fx.q == 2.0) {
    GridSpec g;
    g.size = oracle_size(cfg);
    const std::vector<double> sv = singular_values(discretize(sp, fx.weight, g), std::min(g.size, 100));
    Json arr = Json::array();
    for (std::size_t n = 0; n < sv.size(); ++n) {
      const double scaled = std::pow(n + 1.0, 1.0 / fx.q) * sv[n];
      const double ratio = constant && *constant > 0.0 ? scaled / *constant : std::nan("");
      arr.push_back(Json{{"n", n + 1}, {"a_n", sv[n]}, {"scaled", scaled}, {"ratio", ratio}});
      t.add({std::to_string(n + 1), num(sv[n]), num(scaled), num(ratio)});
    }
    rep.json["envelope"] = arr;
  }
  rep.csv = t;
  return rep;
}

Report run_oracle(const FixtureConfig& fx, const ExperimentConfig& cfg) {
  const SpaceParams sp = derived_params(fx.p, fx.q, fx.lambda);
  Report rep;
  Table t{{"size", "n", "singular_value"}, {}};
  Json arr = Json::array();
  for (int size : cfg.oracle_sizes) {
    arr.push_back(guarded([&] {
      GridSpec g;
      g.size = size;
      const DiscretizedOperator op = discretize(sp, fx.weight, g);
      const std::vector<double> sv = singular_values(op, size);
      for (std::size_t n = 0; n < sv.size(); ++n) t.add({std::to_string(size), std::to_string(n + 1), num(sv[n])});
      const NormCertificate nc = operator_norm_pq(op, fx.p, fx.q, 4, cfg.seed);
      return Json{{"size", size},
                  {"singular_values", sv},
                  {"truncation_error", op.truncation_error},
                  {"norm_estimate", nc.value},
                  {"norm_iterations", nc.iterations}};
    }));
  }
  rep.json["grids"] = arr;
  rep.csv = t;
  return rep;
}

using Runner = Report (*)(const FixtureConfig&, const ExperimentConfig&);

Runner runner_for(const std::string& sub) {
  if (sub == "criteria") return run_criteria;
  if (sub == "kbounds") return run_kbounds;
  if (sub == "partition") return run_partition;
  if (sub == "an-curve") return run_an_curve;
  if (sub == "schatten") return run_schatten;
  if (sub == "asymptotics") return run_asymptotics;
  if (sub == "oracle") return run_oracle;
  return nullptr;
}

Json weight_json(const FixtureConfig& fx) { return fx.weight_spec; }

int thread_count() {
  if (const char* env = std::getenv("LS_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(std::min<long>(n, 256));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Runs fn(i) for i in [0, n) on a small pool; results are stored by index so
// the output order does not depend on scheduling.
template <class F>
void parallel_for(int n, F fn) {
  const int workers = std::min(n, thread_count());
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

void write_file(const std::filesystem::path& path, const std::string& text, std::vector<std::string>& files) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Internal, "cannot write " + path.string());
  out << text;
  files.push_back(path.string());
}

Json check_json(const CheckResult& c) {
  Json j{{"id", c.id}, {"description", c.description}, {"passed", c.passed}};
  Json m = Json::object();
  for (const auto& [k, v] : c.metrics) m[k] = v;
  j["metrics"] = m;
  if (!c.table_columns.empty()) {
    j["table_columns"] = c.table_columns;
    j["table"] = c.table;
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------

ConfigSource load_config_text(const std::string& text) {
  ConfigSource src;
  try {
    src.document = Json::parse(text);
  } catch (const std::exception& e) {
    config_error(std::string("not valid JSON: ") + e.what());
  }
  if (!src.document.is_object()) config_error("top level must be an object");
  return src;
}

void set_override(ConfigSource& src, const std::string& key, const std::string& value_json) {
  if (!kTopKeys.count(key)) config_error("unknown key \"" + key + "\"");
  try {
    src.overrides[key] = Json::parse(value_json);
  } catch (const std::exception&) {
    // A bare word is taken as a string value.
    src.overrides[key] = value_json;
  }
}

ExperimentConfig parse_config(const ConfigSource& src) {
  const Json doc = merged_document(src);
  reject_unknown(doc, kTopKeys, "config");
  ExperimentConfig cfg;

  std::vector<Json> fixture_docs;
  if (doc.contains("fixtures")) {
    if (!doc["fixtures"].is_array() || doc["fixtures"].empty()) config_error("fixtures must be a non-empty list");
    for (const Json& f : doc["fixtures"]) fixture_docs.push_back(f);
  } else {
    fixture_docs.push_back(Json{{"name", "W1"}});
  }
  if (doc.contains("fixture")) {
    if (!doc["fixture"].is_string()) config_error("fixture must be a name");
    const std::string wanted = doc["fixture"].get<std::string>();
    std::vector<Json> chosen;
    for (const Json& f : fixture_docs)
      if (f.is_object() && f.value("name", "") == wanted) chosen.push_back(f);
    if (chosen.empty()) {
      if (!builtin_weights().count(wanted)) config_error("unknown fixture \"" + wanted + "\"");
      chosen.push_back(Json{{"name", wanted}});
    }
    fixture_docs = chosen;
  }

  const std::regex name_re("[A-Za-z0-9_.-]+");
  std::set<std::string> names;
  for (const Json& f : fixture_docs) {
    reject_unknown(f, kFixtureKeys, "fixture");
    FixtureConfig fx;
    if (!f.contains("name") || !f["name"].is_string()) config_error("every fixture needs a name");
    fx.name = f["name"].get<std::string>();
    if (!std::regex_match(fx.name, name_re)) config_error("fixture name \"" + fx.name + "\" is not a plain word");
    if (!names.insert(fx.name).second) config_error("duplicate fixture name \"" + fx.name + "\"");
    Json spec;
    if (doc.contains("weight"))
      spec = doc["weight"];
    else if (f.contains("weight"))
      spec = f["weight"];
    else if (builtin_weights().count(fx.name))
      spec = builtin_spec(fx.name);
    else
      config_error("fixture \"" + fx.name + "\" has no weight");
    fx.weight = parse_weight(spec);
    fx.weight_spec = spec;
    auto pick = [&](const char* key, double dflt) {
      if (doc.contains(key)) return number(doc[key], key);
      if (f.contains(key)) return number(f[key], key);
      return dflt;
    };
    fx.p = pick("p", 2.0);
    fx.q = pick("q", 2.0);
    fx.lambda = pick("lambda", 1.0);
    try {
      derived_params(fx.p, fx.q, fx.lambda);
    } catch (const Error& e) {
      config_error(std::string("fixture \"") + fx.name + "\": " + e.what());
    }
    cfg.fixtures.push_back(fx);
  }

  if (doc.contains("s")) {
    cfg.s_list = number_list(doc["s"], "s");
    for (double s : cfg.s_list)
      if (!(s > 0.0) || std::isinf(s)) config_error("s values must be positive and finite");
  }
  if (doc.contains("epsilon")) {
    cfg.epsilon = number_list(doc["epsilon"], "epsilon");
    for (double e : cfg.epsilon)
      if (!(e > 0.0) || std::isinf(e)) config_error("epsilon values must be positive and finite");
  }
  if (doc.contains("k_range")) {
    const Json& kr = doc["k_range"];
    if (!kr.is_array() || kr.size() != 2) config_error("k_range must be [k_lo, k_hi]");
    cfg.k_range = std::make_pair(integer(kr[0], "k_range"), integer(kr[1], "k_range"));
    if (cfg.k_range->first > cfg.k_range->second) config_error("k_range needs k_lo <= k_hi");
    if (std::abs(cfg.k_range->first) > 900 || std::abs(cfg.k_range->second) > 900) config_error("k_range exceeds |k| <= 900");
  }
  if (doc.contains("oracle_sizes")) {
    const Json& os = doc["oracle_sizes"];
    cfg.oracle_sizes.clear();
    if (os.is_array()) {
      for (const Json& e : os) cfg.oracle_sizes.push_back(integer(e, "oracle_sizes"));
    } else {
      cfg.oracle_sizes.push_back(integer(os, "oracle_sizes"));
    }
    if (cfg.oracle_sizes.empty()) config_error("oracle_sizes must not be empty");
    for (int n : cfg.oracle_sizes)
      if (n < 8 || n > 4096) config_error("oracle sizes must lie in [8, 4096]");
  }
  if (doc.contains("intervals")) {
    if (!doc["intervals"].is_array()) config_error("intervals must be a list of [a, b] pairs");
    for (const Json& iv : doc["intervals"]) {
      if (!iv.is_array() || iv.size() != 2) config_error("intervals must be a list of [a, b] pairs");
      Interval I{number(iv[0], "interval"), number(iv[1], "interval")};
      try {
        validate(I);
      } catch (const Error& e) {
        config_error(e.what());
      }
      cfg.intervals.push_back(I);
    }
  } else {
    cfg.intervals = {{0.0, 1.0}, {0.25, 0.5}, {0.5, kInf}, {0.0, kInf}};
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string() || doc["output_dir"].get<std::string>().empty())
      config_error("output_dir must be a non-empty string");
    cfg.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) config_error("seed must be a nonnegative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("lemma_samples")) {
    cfg.lemma_samples = integer(doc["lemma_samples"], "lemma_samples");
    if (cfg.lemma_samples < 1) config_error("lemma_samples must be positive");
  }
  return cfg;
}

RunOutcome run_subcommand(const std::string& subcommand, const ConfigSource& src) {
  RunOutcome out;
  if (std::find(kSubcommands.begin(), kSubcommands.end(), subcommand) == kSubcommands.end()) {
    out.exit_code = 2;
    out.message = "unknown subcommand \"" + subcommand + "\"";
    return out;
  }
  ExperimentConfig cfg;
  try {
    cfg = parse_config(src);
  } catch (const Error& e) {
    out.exit_code = 2;
    out.message = e.what();
    return out;
  }

  std::vector<std::string> subs;
  if (subcommand == "all")
    subs = {"criteria", "kbounds", "partition", "an-curve", "schatten", "asymptotics", "oracle", "verify"};
  else
    subs = {subcommand};

  const std::filesystem::path dir(cfg.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    out.exit_code = 2;
    out.message = "cannot create output directory " + dir.string() + ": " + ec.message();
    return out;
  }

  for (const std::string& sub : subs) {
    if (sub == "verify") {
      SuiteOptions opt;
      opt.seed = cfg.seed;
      opt.lemma_samples = cfg.lemma_samples;
      std::vector<CheckResult> checks;
      try {
        checks = run_invariant_suite(opt);
      } catch (const Error& e) {
        out.exit_code = 1;
        out.message = std::string("verify: ") + e.what();
        return out;
      }
      bool all_passed = true;
      Json arr = Json::array();
      Table t{{"id", "passed"}, {}};
      for (const CheckResult& c : checks) {
        all_passed = all_passed && c.passed;
        arr.push_back(check_json(c));
        t.add({c.id, c.passed ? "1" : "0"});
      }
      Json doc{{"subcommand", "verify"}, {"seed", cfg.seed}, {"lemma_samples", cfg.lemma_samples},
               {"passed", all_passed}, {"checks", arr}};
      write_file(dir / "verify-suite.json", dump_json(doc), out.files);
      write_file(dir / "verify-suite.csv", t.text(), out.files);
      if (!all_passed) {
        out.exit_code = 1;
        out.message = "verification failed";
      }
      continue;
    }
    const Runner runner = runner_for(sub);
    std::vector<Report> reports(cfg.fixtures.size());
    std::vector<std::string> errors(cfg.fixtures.size());
    parallel_for(static_cast<int>(cfg.fixtures.size()), [&](int i) {
      try {
        reports[i] = runner(cfg.fixtures[i], cfg);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });
    for (std::size_t i = 0; i < cfg.fixtures.size(); ++i) {
      const FixtureConfig& fx = cfg.fixtures[i];
      Json doc{{"subcommand", sub}, {"fixture", fx.name}, {"parameters", params_json(fx)},
               {"weight", weight_json(fx)}};
      if (!errors[i].empty()) {
        doc["error"] = errors[i];
      } else {
        doc["result"] = reports[i].json;
      }
      const std::string stem = sub + "-" + fx.name;
      write_file(dir / (stem + ".json"), dump_json(doc), out.files);
      if (errors[i].empty() && reports[i].csv) write_file(dir / (stem + ".csv"), reports[i].csv->text(), out.files);
    }
  }
  return out;
}

}  // namespace lapnum::detail
