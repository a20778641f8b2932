#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adoprior/belief.hpp"
#include "adoprior/config.hpp"
#include "adoprior/policy.hpp"
#include "adoprior/rng.hpp"

namespace adoprior {

struct GroundTruth {
  std::size_t model = 0;  // index into the belief's models
  std::size_t param = 0;  // grid index
};

// Draws m* from the population model probabilities, then theta* from that
// model's discretized population distribution (a grid point).
GroundTruth sample_ground_truth(const JointBelief& pop, RngStream& rng);

// Inverse-CDF draw of an index from a probability vector.
std::size_t sample_index(std::span<const double> probs, RngStream& rng);

// Belief masses, for trial logs.
struct BeliefSnapshot {
  std::vector<double> model_probs;
  std::vector<std::vector<double>> params;
};

BeliefSnapshot snapshot(const JointBelief& b);

// One batch cell: a design and utility run on one (specified, population)
// pair.
struct Cell {
  std::string condition_id;
  DesignKind design = DesignKind::Ado;
  UtilityKind utility = UtilityKind::MiParameter;
  std::string prior_id;
  std::string specified_id;
  std::string population_id;
};

// Cells in config order: conditions, then their pairs, then designs, then
// utilities (non-ADO designs get a single cell labelled with the first
// utility).
std::vector<Cell> expand_cells(const ExperimentConfig& cfg);

// Trial 0 holds the prior's metric and has no stimulus, response or utility.
struct TrialRecord {
  std::string condition_id;
  std::string design;
  std::string utility_kind;
  std::string prior_id;
  std::string population_id;
  int replication = 0;
  int trial = 0;
  std::optional<double> stimulus;
  std::optional<double> response;
  std::optional<double> utility;
  double log_p_true = 0.0;
  double p_true = 0.0;
  std::optional<double> efd;
  std::optional<BeliefSnapshot> belief;
};

struct ReplicationOptions {
  bool snapshots = false;
};

struct ReplicationResult {
  std::vector<TrialRecord> records;  // trials 0..T
  std::size_t belief_floor_events = 0;
};

// Samples ground truth, then runs the select / respond / update loop for
// cfg.trials trials. The ground truth stays fixed; the population belief is
// only updated when EFD tracking is set to conditioned.
ReplicationResult run_replication(const ExperimentSetup& setup, const Cell& cell,
                                  int rep_index, const ReplicationOptions& opts = {});

struct SummaryRow {
  std::string condition_id;
  std::string design;
  std::string utility_kind;
  std::string prior_id;
  std::string population_id;
  int trial = 0;
  double mean_log_p_true = 0.0;
  double se_log = 0.0;
  double mean_p_true = 0.0;
  double se_linear = 0.0;
  int n_reps = 0;
};

// Mean and standard error (sample sd / sqrt(n); 0 when n == 1) per cell and
// trial, followed by pooled rows (population_id "pooled") for every
// (design, utility, prior_id) that spans more than one population. Records
// are reduced in the order given, which callers keep sorted by cell and
// replication.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

struct BatchResult {
  std::vector<Cell> cells;
  std::vector<TrialRecord> records;  // cell-major, replication-major
  std::vector<SummaryRow> summary;
  std::size_t belief_floor_events = 0;
  std::size_t floored_metric_records = 0;
  bool floor_flag = false;  // more than 1% of metric records floored
  double wall_seconds = 0.0;
};

struct BatchOptions {
  int workers = 1;
  bool snapshots = false;
};

// Runs every cell and replication. Errors in a replication abort the batch
// with Error(Replication) naming the cell and replication index.
BatchResult run_batch(const ExperimentConfig& cfg, const BatchOptions& opts = {});

}  // namespace adoprior
