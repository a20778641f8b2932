#include "adoprior/adoprior.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>

#include "adoprior/config.hpp"
#include "adoprior/efd.hpp"
#include "adoprior/error.hpp"
#include "adoprior/io.hpp"
#include "adoprior/sim.hpp"

using namespace adoprior;

struct adoprior_config {
  ExperimentConfig cfg;
  mutable std::once_flag setup_once;
  mutable std::unique_ptr<ExperimentSetup> setup;

  const ExperimentSetup& get_setup() const {
    std::call_once(setup_once, [&] { setup = std::make_unique<ExperimentSetup>(cfg); });
    return *setup;
  }
};

struct adoprior_batch {
  ExperimentConfig cfg;
  BatchResult result;
};

struct adoprior_belief {
  JointBelief belief;
};

namespace {

thread_local std::string tl_error;

adoprior_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidDistribution: return ADOPRIOR_E_INVALID_DISTRIBUTION;
    case ErrorCode::Parameter: return ADOPRIOR_E_PARAMETER;
    case ErrorCode::Shape: return ADOPRIOR_E_SHAPE;
    case ErrorCode::Lookup: return ADOPRIOR_E_LOOKUP;
    case ErrorCode::Ambiguity: return ADOPRIOR_E_AMBIGUITY;
    case ErrorCode::UnsupportedKind: return ADOPRIOR_E_UNSUPPORTED_KIND;
    case ErrorCode::ImpossibleObservation: return ADOPRIOR_E_IMPOSSIBLE_OBSERVATION;
    case ErrorCode::Configuration: return ADOPRIOR_E_CONFIGURATION;
    case ErrorCode::Parse: return ADOPRIOR_E_PARSE;
    case ErrorCode::Semantic: return ADOPRIOR_E_SEMANTIC;
    case ErrorCode::Io: return ADOPRIOR_E_IO;
    case ErrorCode::Replication: return ADOPRIOR_E_REPLICATION;
  }
  return ADOPRIOR_E_INTERNAL;
}

template <typename Fn>
adoprior_status guarded(Fn&& fn) {
  try {
    fn();
    tl_error.clear();
    return ADOPRIOR_OK;
  } catch (const Error& e) {
    tl_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    tl_error = e.what();
    return ADOPRIOR_E_INTERNAL;
  } catch (...) {
    tl_error = "unknown exception";
    return ADOPRIOR_E_INTERNAL;
  }
}

#define REQUIRE(p)                                          \
  do {                                                      \
    if (!(p)) {                                             \
      tl_error = "null argument: " #p;                      \
      return ADOPRIOR_E_NULL_ARGUMENT;                      \
    }                                                       \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::size_t stimulus_of(const JointBelief& b, double x) { return b.stimulus_index(x); }

FocusKind focus_or(const char* focus, FocusKind fallback) {
  return focus ? parse_focus(focus) : fallback;
}

void copy_out(std::span<const double> v, double* dst, std::size_t capacity, std::size_t* n) {
  *n = v.size();
  if (capacity < v.size()) {
    throw Error(ErrorCode::Shape, "output buffer holds " + std::to_string(capacity) +
                                      " values, need " + std::to_string(v.size()));
  }
  std::copy(v.begin(), v.end(), dst);
}

// Writes to path (plus a sibling manifest) or to stdout.
template <typename Writer>
void write_surface(const char* path, const Manifest& m, Writer&& write) {
  const std::string hash = manifest_hash(m);
  if (!path) {
    write(std::cout, hash);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::Io, std::string("cannot write '") + path + "'");
  write(os, hash);
  std::ofstream ms(std::string(path) + ".manifest.json", std::ios::binary);
  if (!ms) throw Error(ErrorCode::Io, std::string("cannot write manifest for '") + path + "'");
  ms << manifest_json(m);
}

}  // namespace

extern "C" {

const char* adoprior_last_error(void) { return tl_error.c_str(); }

const char* adoprior_status_name(adoprior_status status) {
  switch (status) {
    case ADOPRIOR_OK: return "ok";
    case ADOPRIOR_E_NULL_ARGUMENT: return "null-argument";
    case ADOPRIOR_E_INTERNAL: return "internal";
    default: break;
  }
  if (status >= ADOPRIOR_E_INVALID_DISTRIBUTION && status <= ADOPRIOR_E_REPLICATION) {
    return error_code_name(static_cast<ErrorCode>(status - 1));
  }
  return "unknown";
}

const char* adoprior_version(void) { return version_string(); }

void adoprior_string_free(char* s) { std::free(s); }

adoprior_status adoprior_config_parse(const char* text, adoprior_config** out) {
  REQUIRE(text);
  REQUIRE(out);
  return guarded([&] {
    auto h = std::make_unique<adoprior_config>();
    h->cfg = parse_config(text);
    *out = h.release();
  });
}

adoprior_status adoprior_config_load(const char* path, adoprior_config** out) {
  REQUIRE(path);
  REQUIRE(out);
  return guarded([&] {
    auto h = std::make_unique<adoprior_config>();
    h->cfg = load_config(path);
    *out = h.release();
  });
}

adoprior_status adoprior_config_emit(const adoprior_config* cfg, char** out) {
  REQUIRE(cfg);
  REQUIRE(out);
  return guarded([&] { *out = dup_string(emit_config(cfg->cfg)); });
}

adoprior_status adoprior_config_hash(const adoprior_config* cfg, char** out) {
  REQUIRE(cfg);
  REQUIRE(out);
  return guarded([&] { *out = dup_string(config_hash(cfg->cfg)); });
}

void adoprior_config_free(adoprior_config* cfg) { delete cfg; }

adoprior_status adoprior_run(const adoprior_config* cfg, int workers, int snapshots,
                             adoprior_batch** out) {
  REQUIRE(cfg);
  REQUIRE(out);
  return guarded([&] {
    auto h = std::make_unique<adoprior_batch>();
    h->cfg = cfg->cfg;
    h->result = run_batch(cfg->cfg, {workers > 0 ? workers : 1, snapshots != 0});
    *out = h.release();
  });
}

adoprior_status adoprior_batch_info_get(const adoprior_batch* batch,
                                        adoprior_batch_info* info) {
  REQUIRE(batch);
  REQUIRE(info);
  const BatchResult& r = batch->result;
  info->n_cells = r.cells.size();
  info->n_records = r.records.size();
  info->n_summary_rows = r.summary.size();
  info->belief_floor_events = r.belief_floor_events;
  info->floored_metric_records = r.floored_metric_records;
  info->floor_flag = r.floor_flag ? 1 : 0;
  info->wall_seconds = r.wall_seconds;
  return ADOPRIOR_OK;
}

adoprior_status adoprior_batch_write(const adoprior_batch* batch, const char* out_dir,
                                     int trial_logs) {
  REQUIRE(batch);
  REQUIRE(out_dir);
  return guarded(
      [&] { write_batch_outputs(out_dir, batch->cfg, batch->result, trial_logs != 0); });
}

adoprior_status adoprior_batch_summary_csv(const adoprior_batch* batch, char** out) {
  REQUIRE(batch);
  REQUIRE(out);
  return guarded([&] {
    std::ostringstream os;
    write_summary_csv(os, batch->result.summary,
                      manifest_hash(make_manifest(batch->cfg, batch->result)));
    *out = dup_string(os.str());
  });
}

void adoprior_batch_free(adoprior_batch* batch) { delete batch; }

adoprior_status adoprior_utility_surface(const adoprior_config* cfg, const char* dist_id,
                                         const char* path) {
  REQUIRE(cfg);
  REQUIRE(dist_id);
  return guarded([&] {
    const auto pts = utility_surface(cfg->get_setup(), dist_id);
    write_surface(path, make_manifest(cfg->cfg), [&](std::ostream& os, const std::string& h) {
      write_utility_csv(os, pts, h);
    });
  });
}

adoprior_status adoprior_efd_surface(const adoprior_config* cfg, const char* spec_id,
                                     const char* pop_id, const char* focus,
                                     const char* path) {
  REQUIRE(cfg);
  REQUIRE(spec_id);
  REQUIRE(pop_id);
  return guarded([&] {
    const FocusKind configured = cfg->cfg.focus;
    const FocusKind f =
        focus_or(focus, configured == FocusKind::Joint ? FocusKind::Model : configured);
    const auto pts = efd_surface(cfg->get_setup(), spec_id, pop_id, f);
    write_surface(path, make_manifest(cfg->cfg), [&](std::ostream& os, const std::string& h) {
      write_efd_csv(os, pts, h);
    });
  });
}

adoprior_status adoprior_summarize_log(const char* log_path, const char* out_path) {
  REQUIRE(log_path);
  return guarded([&] {
    std::ifstream in(log_path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, std::string("cannot read '") + log_path + "'");
    const TrialLog log = read_trial_log(in);
    const auto rows = summarize(log.records);
    if (!out_path) {
      write_summary_csv(std::cout, rows, log.manifest_hash);
      std::cout.flush();
      return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw Error(ErrorCode::Io, std::string("cannot write '") + out_path + "'");
    write_summary_csv(os, rows, log.manifest_hash);
  });
}

adoprior_status adoprior_belief_create(const adoprior_config* cfg, const char* dist_id,
                                       adoprior_belief** out) {
  REQUIRE(cfg);
  REQUIRE(dist_id);
  REQUIRE(out);
  return guarded([&] {
    *out = new adoprior_belief{cfg->get_setup().belief(dist_id, Role::Specified)};
  });
}

adoprior_status adoprior_belief_update(const adoprior_belief* b, double stimulus,
                                       double response, adoprior_belief** out) {
  REQUIRE(b);
  REQUIRE(out);
  return guarded([&] {
    const std::size_t x = stimulus_of(b->belief, stimulus);
    const std::size_t y = b->belief.model(0).response_index(response);
    *out = new adoprior_belief{update(b->belief, x, y)};
  });
}

adoprior_status adoprior_belief_predictive(const adoprior_belief* b, double stimulus,
                                           double* masses, size_t capacity, size_t* n) {
  REQUIRE(b);
  REQUIRE(masses);
  REQUIRE(n);
  return guarded([&] {
    const DiscreteDist d = prior_predictive(b->belief, stimulus_of(b->belief, stimulus));
    copy_out(d.masses(), masses, capacity, n);
  });
}

adoprior_status adoprior_belief_model_probs(const adoprior_belief* b, double* masses,
                                            size_t capacity, size_t* n) {
  REQUIRE(b);
  REQUIRE(masses);
  REQUIRE(n);
  return guarded([&] { copy_out(b->belief.model_probs().masses(), masses, capacity, n); });
}

adoprior_status adoprior_mi_utility(const adoprior_belief* b, double stimulus,
                                    const char* focus, double* out) {
  REQUIRE(b);
  REQUIRE(focus);
  REQUIRE(out);
  return guarded([&] {
    *out = mi_utility(b->belief, stimulus_of(b->belief, stimulus), parse_focus(focus));
  });
}

adoprior_status adoprior_utility(const adoprior_belief* b, double stimulus,
                                 const char* utility_kind, const char* ucb_focus,
                                 double ucb_weight, double* out) {
  REQUIRE(b);
  REQUIRE(utility_kind);
  REQUIRE(out);
  return guarded([&] {
    const FocusKind fallback =
        b->belief.n_models() > 1 ? FocusKind::Model : FocusKind::Parameter;
    const UtilitySpec spec{parse_utility(utility_kind), focus_or(ucb_focus, fallback),
                           ucb_weight};
    *out = global_utility(b->belief, stimulus_of(b->belief, stimulus), spec);
  });
}

adoprior_status adoprior_efd(const adoprior_belief* spec, const adoprior_belief* pop,
                             double stimulus, const char* focus, adoprior_efd_parts* out) {
  REQUIRE(spec);
  REQUIRE(pop);
  REQUIRE(focus);
  REQUIRE(out);
  return guarded([&] {
    const EfdBreakdown d = efd_decomposition(
        spec->belief, pop->belief, stimulus_of(spec->belief, stimulus), parse_focus(focus));
    *out = {d.response_variability, d.surprisal, d.hindsight, d.total};
  });
}

void adoprior_belief_free(adoprior_belief* b) { delete b; }

}  // extern "C"
