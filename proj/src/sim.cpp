#include "adoprior/sim.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "adoprior/efd.hpp"
#include "adoprior/error.hpp"

namespace adoprior {

namespace {

struct Metric {
  double log_p = 0.0;
  double p = 0.0;
};

Metric truth_metric(const JointBelief& b, const GroundTruth& gt, FocusKind f) {
  const double pm = b.model_probs()[gt.model];
  const double pt = b.param_dist(gt.model)[gt.param];
  switch (f) {
    case FocusKind::Parameter: return {std::log(pt), pt};
    case FocusKind::Model: return {std::log(pm), pm};
    case FocusKind::Joint: return {std::log(pm) + std::log(pt), pm * pt};
  }
  return {};
}

struct Accumulator {
  std::vector<double> log_p;
  std::vector<double> p;
};

void mean_se(const std::vector<double>& v, double& mean, double& se) {
  double sum = 0.0;
  for (double x : v) sum += x;
  const double n = static_cast<double>(v.size());
  mean = sum / n;
  if (v.size() < 2) {
    se = 0.0;
    return;
  }
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
}

SummaryRow make_row(const TrialRecord& proto, const std::string& condition_id,
                    const std::string& population_id, int trial,
                    const Accumulator& acc) {
  SummaryRow row;
  row.condition_id = condition_id;
  row.design = proto.design;
  row.utility_kind = proto.utility_kind;
  row.prior_id = proto.prior_id;
  row.population_id = population_id;
  row.trial = trial;
  mean_se(acc.log_p, row.mean_log_p_true, row.se_log);
  mean_se(acc.p, row.mean_p_true, row.se_linear);
  row.n_reps = static_cast<int>(acc.p.size());
  return row;
}

}  // namespace

std::size_t sample_index(std::span<const double> probs, RngStream& rng) {
  const double u = rng.uniform();
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = i;
    cum += probs[i];
    if (u < cum) return i;
  }
  return last_positive;  // u fell in the rounding gap above the last cum
}

GroundTruth sample_ground_truth(const JointBelief& pop, RngStream& rng) {
  GroundTruth gt;
  gt.model = sample_index(pop.model_probs().masses(), rng);
  gt.param = sample_index(pop.param_dist(gt.model).masses(), rng);
  return gt;
}

BeliefSnapshot snapshot(const JointBelief& b) {
  BeliefSnapshot s;
  s.model_probs.assign(b.model_probs().masses().begin(), b.model_probs().masses().end());
  for (std::size_t m = 0; m < b.n_models(); ++m) {
    const auto masses = b.param_dist(m).masses();
    s.params.emplace_back(masses.begin(), masses.end());
  }
  return s;
}

std::vector<Cell> expand_cells(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  for (const auto& cond : cfg.conditions) {
    for (const auto& [spec_id, pop_id] : cond.pairs) {
      for (DesignKind d : cfg.designs) {
        const std::size_t n_util = d == DesignKind::Ado ? cfg.utilities.size() : 1;
        for (std::size_t u = 0; u < n_util; ++u) {
          Cell c;
          c.design = d;
          c.utility = cfg.utilities[u];
          c.prior_id = cond.prior_id;
          c.specified_id = spec_id;
          c.population_id = pop_id;
          c.condition_id = std::string(design_name(d)) + ":" + utility_name(c.utility) +
                           ":" + c.prior_id + ":" + pop_id;
          cells.push_back(std::move(c));
        }
      }
    }
  }
  return cells;
}

ReplicationResult run_replication(const ExperimentSetup& setup, const Cell& cell,
                                  int rep_index, const ReplicationOptions& opts) {
  const ExperimentConfig& cfg = setup.config();
  if (cfg.trials < 1) throw Error(ErrorCode::Configuration, "trials must be >= 1");
  const auto rep = static_cast<std::uint64_t>(rep_index);

  JointBelief spec = setup.belief(cell.specified_id, Role::Specified);
  JointBelief pop = setup.belief(cell.population_id, Role::Population);

  RngStream truth_rng(cfg.seed, rep, StreamPurpose::GroundTruth);
  RngStream response_rng(cfg.seed, rep, StreamPurpose::Responses);
  RngStream policy_rng(cfg.seed, rep, StreamPurpose::RandomPolicy);
  const GroundTruth gt = sample_ground_truth(pop, truth_rng);

  std::vector<std::size_t> schedule;
  if (cell.design == DesignKind::Fixed) {
    RngStream schedule_rng(cfg.seed, rep, StreamPurpose::Schedule);
    schedule = make_fixed_schedule(setup.fixed_multiset(), schedule_rng);
  }
  const UtilitySpec utility = cfg.utility_spec(cell.utility);
  const FocusKind efd_focus =
      cfg.focus == FocusKind::Joint ? FocusKind::Model : cfg.focus;

  ReplicationResult out;
  out.records.reserve(static_cast<std::size_t>(cfg.trials) + 1);
  auto record = [&](int trial) {
    TrialRecord r;
    r.condition_id = cell.condition_id;
    r.design = design_name(cell.design);
    r.utility_kind = utility_name(cell.utility);
    r.prior_id = cell.prior_id;
    r.population_id = cell.population_id;
    r.replication = rep_index;
    r.trial = trial;
    const Metric m = truth_metric(spec, gt, cfg.focus);
    r.log_p_true = m.log_p;
    r.p_true = m.p;
    if (opts.snapshots) r.belief = snapshot(spec);
    return r;
  };
  out.records.push_back(record(0));

  const ResponseModel& truth_model = spec.model(gt.model);
  for (int t = 1; t <= cfg.trials; ++t) {
    Selection sel;
    switch (cell.design) {
      case DesignKind::Ado:
        sel = ado_select(spec, setup.candidates(), utility);
        break;
      case DesignKind::Fixed:
        sel.stimulus = schedule[static_cast<std::size_t>(t - 1)];
        sel.utility = global_utility(spec, sel.stimulus, utility);
        break;
      case DesignKind::Random:
        sel.stimulus = random_select(setup.candidates(), policy_rng);
        sel.utility = global_utility(spec, sel.stimulus, utility);
        break;
    }
    std::optional<double> efd;
    if (cfg.track_efd != EfdTracking::Off) {
      efd = expected_focal_divergence(spec, pop, sel.stimulus, efd_focus);
    }
    const std::size_t y =
        sample_index(truth_model.row(sel.stimulus, gt.param), response_rng);
    try {
      spec = update(spec, sel.stimulus, y);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ImpossibleObservation) {
        throw Error(ErrorCode::Replication,
                    "impossible observation under the specified belief at trial " +
                        std::to_string(t));
      }
      throw;
    }
    if (cfg.track_efd == EfdTracking::ConditionedPopulation) {
      pop = update(pop, sel.stimulus, y);
    }
    TrialRecord r = record(t);
    r.stimulus = spec.stimuli()[sel.stimulus];
    r.response = std::get<double>((*truth_model.responses())[y]);
    r.utility = sel.utility;
    r.efd = efd;
    out.records.push_back(std::move(r));
  }
  out.belief_floor_events = spec.floor_events();
  return out;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  // Groups in order of first appearance.
  std::vector<std::string> group_order;
  std::map<std::string, std::map<int, Accumulator>> groups;
  std::map<std::string, const TrialRecord*> proto;
  std::vector<std::string> pool_order;
  std::map<std::string, std::vector<std::string>> pool_members;

  for (const auto& r : records) {
    if (!groups.count(r.condition_id)) {
      group_order.push_back(r.condition_id);
      proto[r.condition_id] = &r;
      const std::string pool = r.design + ":" + r.utility_kind + ":" + r.prior_id;
      if (!pool_members.count(pool)) pool_order.push_back(pool);
      pool_members[pool].push_back(r.condition_id);
    }
    auto& acc = groups[r.condition_id][r.trial];
    acc.log_p.push_back(r.log_p_true);
    acc.p.push_back(r.p_true);
  }

  std::vector<SummaryRow> rows;
  for (const auto& id : group_order) {
    for (const auto& [trial, acc] : groups[id]) {
      rows.push_back(make_row(*proto[id], id, proto[id]->population_id, trial, acc));
    }
  }
  for (const auto& pool : pool_order) {
    const auto& members = pool_members[pool];
    if (members.size() < 2) continue;
    std::map<int, Accumulator> pooled;
    for (const auto& id : members) {
      for (const auto& [trial, acc] : groups[id]) {
        auto& dst = pooled[trial];
        dst.log_p.insert(dst.log_p.end(), acc.log_p.begin(), acc.log_p.end());
        dst.p.insert(dst.p.end(), acc.p.begin(), acc.p.end());
      }
    }
    for (const auto& [trial, acc] : pooled) {
      rows.push_back(make_row(*proto[members.front()], pool + ":pooled", "pooled",
                              trial, acc));
    }
  }
  return rows;
}

BatchResult run_batch(const ExperimentConfig& cfg, const BatchOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentSetup setup(cfg);
  BatchResult out;
  out.cells = expand_cells(cfg);

  const std::size_t reps = static_cast<std::size_t>(cfg.reps);
  const std::size_t n_jobs = out.cells.size() * reps;
  std::vector<ReplicationResult> results(n_jobs);
  std::vector<std::exception_ptr> errors(n_jobs);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= n_jobs || failed.load()) return;
      try {
        results[job] = run_replication(setup, out.cells[job / reps],
                                       static_cast<int>(job % reps),
                                       {opts.snapshots});
      } catch (...) {
        errors[job] = std::current_exception();
        failed.store(true);
      }
    }
  };
  const int workers = std::max(1, opts.workers);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t job = 0; job < n_jobs; ++job) {
    if (!errors[job]) continue;
    std::string what = "unknown error";
    try {
      std::rethrow_exception(errors[job]);
    } catch (const std::exception& e) {
      what = e.what();
    }
    throw Error(ErrorCode::Replication, "cell " + out.cells[job / reps].condition_id +
                                            " replication " + std::to_string(job % reps) +
                                            ": " + what);
  }

  const double floor_log = kLogMassFloor + 1e-9;
  for (auto& r : results) {
    out.belief_floor_events += r.belief_floor_events;
    for (auto& rec : r.records) {
      if (rec.log_p_true <= floor_log) ++out.floored_metric_records;
      out.records.push_back(std::move(rec));
    }
  }
  out.floor_flag = out.floored_metric_records * 100 > out.records.size();
  out.summary = summarize(out.records);
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace adoprior
