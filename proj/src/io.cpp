#include "adoprior/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "adoprior/error.hpp"
#include "adoprior/rng.hpp"

#ifndef ADOPRIOR_VERSION
#define ADOPRIOR_VERSION "0.0.0"
#endif

namespace adoprior {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kManifestPrefix = "# manifest ";

// JSON has no infinities; non-finite values travel as strings.
Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double to_number(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("expected a number");
}

Json optional_number(const std::optional<double>& v) {
  return v ? number(*v) : Json(nullptr);
}

std::optional<double> to_optional(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return to_number(j);
}

Json manifest_fields(const Manifest& m, bool with_wall) {
  Json j;
  j["config_hash"] = m.config_hash;
  j["generator"] = m.generator;
  j["seed"] = m.seed;
  j["version"] = m.version;
  if (with_wall) j["wall_seconds"] = m.wall_seconds;
  j["belief_floor_events"] = m.belief_floor_events;
  j["floored_metric_records"] = m.floored_metric_records;
  j["floor_flag"] = m.floor_flag;
  j["config"] = m.config_text;
  return j;
}

void header(std::ostream& os, const std::string& hash) {
  os << kManifestPrefix << hash << '\n';
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error(ErrorCode::Io, "cannot write '" + p.string() + "'");
  return os;
}

}  // namespace

const char* version_string() noexcept { return ADOPRIOR_VERSION; }

Manifest make_manifest(const ExperimentConfig& cfg) {
  Manifest m;
  m.config_hash = config_hash(cfg);
  m.generator = Philox4x32::kName;
  m.seed = cfg.seed;
  m.version = version_string();
  m.config_text = emit_config(cfg);
  return m;
}

Manifest make_manifest(const ExperimentConfig& cfg, const BatchResult& batch) {
  Manifest m = make_manifest(cfg);
  m.wall_seconds = batch.wall_seconds;
  m.belief_floor_events = batch.belief_floor_events;
  m.floored_metric_records = batch.floored_metric_records;
  m.floor_flag = batch.floor_flag;
  return m;
}

std::string manifest_hash(const Manifest& m) {
  return hex64(fnv1a64(manifest_fields(m, false).dump()));
}

std::string manifest_json(const Manifest& m) {
  Json j = manifest_fields(m, true);
  j["manifest_hash"] = manifest_hash(m);
  return j.dump(2) + "\n";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows,
                       const std::string& hash) {
  header(os, hash);
  os << "condition_id,design,utility_kind,prior_id,population_id,trial,"
        "mean_log_p_true,se_log,mean_p_true,se_linear,n_reps\n";
  for (const auto& r : rows) {
    os << r.condition_id << ',' << r.design << ',' << r.utility_kind << ','
       << r.prior_id << ',' << r.population_id << ',' << r.trial << ','
       << format_double(r.mean_log_p_true) << ',' << format_double(r.se_log) << ','
       << format_double(r.mean_p_true) << ',' << format_double(r.se_linear) << ','
       << r.n_reps << '\n';
  }
}

void write_trial_log(std::ostream& os, const std::vector<TrialRecord>& records,
                     const std::string& hash) {
  header(os, hash);
  for (const auto& r : records) {
    Json j;
    j["condition_id"] = r.condition_id;
    j["design"] = r.design;
    j["utility_kind"] = r.utility_kind;
    j["prior_id"] = r.prior_id;
    j["population_id"] = r.population_id;
    j["replication"] = r.replication;
    j["trial"] = r.trial;
    j["stimulus"] = optional_number(r.stimulus);
    j["response"] = optional_number(r.response);
    j["utility"] = optional_number(r.utility);
    j["log_p_true"] = number(r.log_p_true);
    j["p_true"] = number(r.p_true);
    j["efd"] = optional_number(r.efd);
    if (r.belief) {
      j["belief"] = {{"model_probs", r.belief->model_probs},
                     {"params", r.belief->params}};
    }
    os << j.dump() << '\n';
  }
}

TrialLog read_trial_log(std::istream& is) {
  TrialLog log;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind(kManifestPrefix, 0) == 0 && log.manifest_hash.empty()) {
        log.manifest_hash = line.substr(std::string(kManifestPrefix).size());
      }
      continue;
    }
    try {
      const Json j = Json::parse(line);
      TrialRecord r;
      r.condition_id = j.at("condition_id").get<std::string>();
      r.design = j.at("design").get<std::string>();
      r.utility_kind = j.at("utility_kind").get<std::string>();
      r.prior_id = j.at("prior_id").get<std::string>();
      r.population_id = j.at("population_id").get<std::string>();
      r.replication = j.at("replication").get<int>();
      r.trial = j.at("trial").get<int>();
      r.stimulus = to_optional(j.at("stimulus"));
      r.response = to_optional(j.at("response"));
      r.utility = to_optional(j.at("utility"));
      r.log_p_true = to_number(j.at("log_p_true"));
      r.p_true = to_number(j.at("p_true"));
      r.efd = to_optional(j.at("efd"));
      if (j.contains("belief")) {
        BeliefSnapshot s;
        s.model_probs = j["belief"].at("model_probs").get<std::vector<double>>();
        s.params = j["belief"].at("params").get<std::vector<std::vector<double>>>();
        r.belief = std::move(s);
      }
      log.records.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ParseError(line_no, std::string("trial log: ") + e.what());
    }
  }
  return log;
}

std::vector<UtilityPoint> utility_surface(const ExperimentSetup& setup,
                                          const std::string& dist_id) {
  const ExperimentConfig& cfg = setup.config();
  const JointBelief b = setup.belief(dist_id, Role::Specified);
  std::vector<UtilityPoint> out;
  for (UtilityKind k : cfg.utilities) {
    const UtilitySpec spec = cfg.utility_spec(k);
    for (std::size_t x : setup.candidates()) {
      out.push_back({cfg.stimuli.values[x], k, global_utility(b, x, spec)});
    }
  }
  return out;
}

void write_utility_csv(std::ostream& os, const std::vector<UtilityPoint>& pts,
                       const std::string& hash) {
  header(os, hash);
  os << "stimulus,utility_kind,value\n";
  for (const auto& p : pts) {
    os << format_double(p.stimulus) << ',' << utility_name(p.kind) << ','
       << format_double(p.value) << '\n';
  }
}

std::vector<EfdPoint> efd_surface(const ExperimentSetup& setup, const std::string& spec_id,
                                  const std::string& pop_id, FocusKind f) {
  const JointBelief spec = setup.belief(spec_id, Role::Specified);
  const JointBelief pop = setup.belief(pop_id, Role::Population);
  std::vector<EfdPoint> out;
  for (std::size_t x : setup.candidates()) {
    out.push_back({setup.config().stimuli.values[x], efd_decomposition(spec, pop, x, f),
                   mi_utility(spec, x, f)});
  }
  return out;
}

void write_efd_csv(std::ostream& os, const std::vector<EfdPoint>& pts,
                   const std::string& hash) {
  header(os, hash);
  os << "stimulus,response_variability,surprisal,hindsight,total,global_utility\n";
  for (const auto& p : pts) {
    os << format_double(p.stimulus) << ',' << format_double(p.parts.response_variability)
       << ',' << format_double(p.parts.surprisal) << ','
       << format_double(p.parts.hindsight) << ',' << format_double(p.parts.total) << ','
       << format_double(p.global_utility) << '\n';
  }
}

void write_batch_outputs(const std::string& dir, const ExperimentConfig& cfg,
                         const BatchResult& batch, bool trial_logs) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + dir + "': " + ec.message());
  const Manifest m = make_manifest(cfg, batch);
  const std::string hash = manifest_hash(m);
  {
    auto os = open_out(fs::path(dir) / "manifest.json");
    os << manifest_json(m);
  }
  {
    auto os = open_out(fs::path(dir) / "summary.csv");
    write_summary_csv(os, batch.summary, hash);
  }
  if (trial_logs) {
    auto os = open_out(fs::path(dir) / "trials.jsonl");
    write_trial_log(os, batch.records, hash);
    if (!os) throw Error(ErrorCode::Io, "write failed for trials.jsonl");
  }
}

}  // namespace adoprior
