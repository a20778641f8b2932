#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "adoprior/config.hpp"
#include "adoprior/efd.hpp"
#include "adoprior/sim.hpp"

namespace adoprior {

const char* version_string() noexcept;

struct Manifest {
  std::string config_hash;
  std::string generator;
  std::uint64_t seed = 0;
  std::string version;
  double wall_seconds = 0.0;
  std::size_t belief_floor_events = 0;
  std::size_t floored_metric_records = 0;
  bool floor_flag = false;
  std::string config_text;  // canonical emit_config output
};

Manifest make_manifest(const ExperimentConfig& cfg);
Manifest make_manifest(const ExperimentConfig& cfg, const BatchResult& batch);

// Hash of every manifest field except the wall time, so reruns agree.
std::string manifest_hash(const Manifest& m);
std::string manifest_json(const Manifest& m);

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

// Every writer starts with "# manifest <hash>".
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows,
                       const std::string& hash);
void write_trial_log(std::ostream& os, const std::vector<TrialRecord>& records,
                     const std::string& hash);

struct TrialLog {
  std::string manifest_hash;
  std::vector<TrialRecord> records;
};

// Reads a log produced by write_trial_log. Throws Error(Parse) with a line
// number on malformed input.
TrialLog read_trial_log(std::istream& is);

struct UtilityPoint {
  double stimulus = 0.0;
  UtilityKind kind = UtilityKind::MiParameter;
  double value = 0.0;
};

// U(x) over every candidate for each configured utility kind, at the prior.
std::vector<UtilityPoint> utility_surface(const ExperimentSetup& setup,
                                          const std::string& dist_id);
void write_utility_csv(std::ostream& os, const std::vector<UtilityPoint>& pts,
                       const std::string& hash);

struct EfdPoint {
  double stimulus = 0.0;
  EfdBreakdown parts;
  double global_utility = 0.0;  // mi_utility of the specified belief
};

std::vector<EfdPoint> efd_surface(const ExperimentSetup& setup, const std::string& spec_id,
                                  const std::string& pop_id, FocusKind f);
void write_efd_csv(std::ostream& os, const std::vector<EfdPoint>& pts,
                   const std::string& hash);

// Writes manifest.json, summary.csv and (optionally) trials.jsonl into dir,
// creating it when needed.
void write_batch_outputs(const std::string& dir, const ExperimentConfig& cfg,
                         const BatchResult& batch, bool trial_logs);

}  // namespace adoprior
