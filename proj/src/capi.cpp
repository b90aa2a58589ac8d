#include "lapnum/lapnum.h"

#include <string>
#include <vector>

#include "experiment.hpp"
#include "lapnum/criteria.hpp"
#include "lapnum/localnorm.hpp"
#include "lapnum/oracle.hpp"
#include "lapnum/partition.hpp"
#include "lapnum/schatten.hpp"

struct lapnum_weight {
  lapnum::Weight w;
};

struct lapnum_params {
  lapnum::SpaceParams sp;
};

struct lapnum_config {
  lapnum::detail::ConfigSource src;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_outputs;

lapnum_status to_status(lapnum::ErrorCode c) {
  switch (c) {
    case lapnum::ErrorCode::InvalidArgument: return LAPNUM_INVALID_ARGUMENT;
    case lapnum::ErrorCode::Unsupported: return LAPNUM_UNSUPPORTED;
    case lapnum::ErrorCode::NotCompact: return LAPNUM_NOT_COMPACT;
    case lapnum::ErrorCode::Unbounded: return LAPNUM_UNBOUNDED;
    case lapnum::ErrorCode::Config: return LAPNUM_CONFIG_ERROR;
    case lapnum::ErrorCode::Internal: return LAPNUM_INTERNAL_ERROR;
  }
  return LAPNUM_INTERNAL_ERROR;
}

template <class F>
lapnum_status guard(F&& f) {
  g_error.clear();
  try {
    f();
    return LAPNUM_OK;
  } catch (const lapnum::Error& e) {
    g_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_error = e.what();
    return LAPNUM_INTERNAL_ERROR;
  } catch (...) {
    g_error = "unknown failure";
    return LAPNUM_INTERNAL_ERROR;
  }
}

void need(const void* p, const char* what) {
  if (!p) lapnum::fail(lapnum::ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

}  // namespace

extern "C" {

const char* lapnum_version(void) { return "0.1.0"; }

const char* lapnum_last_error(void) { return g_error.c_str(); }

const char* lapnum_last_outputs(void) { return g_outputs.c_str(); }

lapnum_status lapnum_weight_create(const double* lo, const double* hi, const double* coeff, const double* exponent,
                                   size_t pieces, lapnum_weight** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    if (pieces > 0) {
      need(lo, "lo");
      need(hi, "hi");
      need(coeff, "coeff");
      need(exponent, "exponent");
    }
    std::vector<lapnum::WeightPiece> ps;
    for (size_t i = 0; i < pieces; ++i) ps.push_back({lo[i], hi[i], coeff[i], exponent[i]});
    *out = new lapnum_weight{lapnum::Weight(ps)};
  });
}

void lapnum_weight_destroy(lapnum_weight* w) { delete w; }

lapnum_status lapnum_weight_eval(const lapnum_weight* w, double y, double* out) {
  return guard([&] {
    need(w, "weight");
    need(out, "out");
    *out = w->w(y);
  });
}

lapnum_status lapnum_params_create(double p, double q, double lambda, lapnum_params** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    *out = new lapnum_params{lapnum::derived_params(p, q, lambda)};
  });
}

void lapnum_params_destroy(lapnum_params* params) { delete params; }

lapnum_status lapnum_norm_bounds(const lapnum_params* params, const lapnum_weight* w, lapnum_bound* out) {
  return guard([&] {
    need(params, "params");
    need(w, "weight");
    need(out, "out");
    const lapnum::BoundReport r = lapnum::norm_criterion(params->sp, w->w);
    out->value = r.value;
    out->lower_bound = r.lower_bound;
    out->upper_bound = r.upper_bound;
    out->bounded = r.decision == lapnum::Decision::Bounded ? 1 : r.decision == lapnum::Decision::Unbounded ? 0 : -1;
    out->compact = r.compactness == lapnum::Compactness::Compact      ? 1
                   : r.compactness == lapnum::Compactness::NotCompact ? 0
                                                                      : -1;
  });
}

lapnum_status lapnum_tail_integral(double z, double b, double delta, double lambda, double* out) {
  return guard([&] {
    need(out, "out");
    *out = lapnum::tail_integral(z, b, delta, lambda);
  });
}

lapnum_status lapnum_local_bounds(const lapnum_params* params, const lapnum_weight* w, double a, double b,
                                  double* lower, double* upper) {
  return guard([&] {
    need(params, "params");
    need(w, "weight");
    need(lower, "lower");
    need(upper, "upper");
    const lapnum::KBounds kb = lapnum::K_bounds(lapnum::Interval{a, b}, params->sp, w->w);
    *lower = kb.lower;
    *upper = kb.upper;
  });
}

lapnum_status lapnum_partition(const lapnum_params* params, const lapnum_weight* w, double epsilon, int* N,
                               double* an_bound) {
  return guard([&] {
    need(params, "params");
    need(w, "weight");
    need(N, "N");
    need(an_bound, "an_bound");
    const lapnum::Partition part = lapnum::split(epsilon, params->sp, w->w);
    *N = part.N;
    *an_bound = lapnum::an_upper(part, params->sp);
  });
}

lapnum_status lapnum_J_s(const lapnum_params* params, const lapnum_weight* w, double s, double* out) {
  return guard([&] {
    need(params, "params");
    need(w, "weight");
    need(out, "out");
    *out = params->sp.p == 1.0 ? lapnum::J_bar_s(params->sp, w->w, s) : lapnum::J_s(params->sp, w->w, s);
  });
}

lapnum_status lapnum_asymptotic_constant(const lapnum_params* params, const lapnum_weight* w, double* out) {
  return guard([&] {
    need(params, "params");
    need(w, "weight");
    need(out, "out");
    *out = lapnum::asymptotic_constant(params->sp, w->w).value;
  });
}

lapnum_status lapnum_hilbert_schmidt(double lambda, const lapnum_weight* w, double* out) {
  return guard([&] {
    need(w, "weight");
    need(out, "out");
    *out = lapnum::hilbert_schmidt_exact(lambda, w->w);
  });
}

lapnum_status lapnum_singular_values(const lapnum_params* params, const lapnum_weight* w, int size, double* out,
                                     int count) {
  return guard([&] {
    need(params, "params");
    need(w, "weight");
    need(out, "out");
    if (size < 2 || count < 0) lapnum::fail(lapnum::ErrorCode::InvalidArgument, "size must be >= 2 and count >= 0");
    lapnum::GridSpec grid;
    grid.size = size;
    const std::vector<double> sv = lapnum::singular_values(lapnum::discretize(params->sp, w->w, grid), count);
    for (int i = 0; i < count; ++i) out[i] = i < static_cast<int>(sv.size()) ? sv[i] : 0.0;
  });
}

lapnum_status lapnum_config_from_json(const char* text, lapnum_config** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = nullptr;
    *out = new lapnum_config{lapnum::detail::load_config_text(text)};
  });
}

lapnum_status lapnum_config_default(lapnum_config** out) {
  return guard([&] {
    need(out, "out");
    *out = new lapnum_config{};
  });
}

lapnum_status lapnum_config_set(lapnum_config* cfg, const char* key, const char* value_json) {
  return guard([&] {
    need(cfg, "config");
    need(key, "key");
    need(value_json, "value");
    lapnum::detail::set_override(cfg->src, key, value_json);
  });
}

void lapnum_config_destroy(lapnum_config* cfg) { delete cfg; }

lapnum_status lapnum_run(const char* subcommand, const lapnum_config* cfg, int* exit_code) {
  g_outputs.clear();
  return guard([&] {
    need(subcommand, "subcommand");
    need(cfg, "config");
    need(exit_code, "exit_code");
    const lapnum::detail::RunOutcome r = lapnum::detail::run_subcommand(subcommand, cfg->src);
    *exit_code = r.exit_code;
    for (const std::string& f : r.files) g_outputs += f + "\n";
    if (r.exit_code == 2) lapnum::fail(lapnum::ErrorCode::Config, r.message);
    if (!r.message.empty()) g_error = r.message;
  });
}

}  // extern "C"
