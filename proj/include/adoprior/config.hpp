#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adoprior/belief.hpp"
#include "adoprior/policy.hpp"
#include "adoprior/utility.hpp"

namespace adoprior {

// A list of reals written as linspace(lo,hi,n), range(lo,hi) (inclusive
// integers), midpoints(n) or values(v1,...). Equality looks at the values.
struct ValueList {
  std::string text;
  std::vector<double> values;

  bool operator==(const ValueList& o) const { return values == o.values; }
};

ValueList parse_value_list(const std::string& text);

// Prior over one grid axis.
struct AxisPrior {
  enum class Kind { Normal, Beta, Uniform, Point };
  Kind kind = Kind::Uniform;
  double p1 = 0.0;
  double p2 = 0.0;

  bool operator==(const AxisPrior&) const = default;
};

std::string to_string(const AxisPrior& a);

struct ModelPrior {
  std::string model;
  double weight = 1.0;
  std::vector<AxisPrior> axes;  // one per grid axis; product prior

  bool operator==(const ModelPrior&) const = default;
};

// A named distribution over models and parameters; used as either the
// specified prior or the population.
struct DistSpec {
  std::string id;
  std::vector<ModelPrior> models;  // in config model order

  bool operator==(const DistSpec&) const = default;
};

// A prior type: (specified, population) dist-id pairs that share a prior_id.
struct ConditionSpec {
  std::string prior_id;
  std::vector<std::pair<std::string, std::string>> pairs;

  bool operator==(const ConditionSpec&) const = default;
};

enum class EfdTracking { Off, FixedPopulation, ConditionedPopulation };

struct ExperimentConfig {
  std::string name = "experiment";
  std::vector<std::string> models;
  std::vector<ValueList> param_grid;  // one entry per axis
  ValueList stimuli;
  ValueList fixed_stimuli;
  int fixed_repeats = 1;
  ValueList response_bins;  // gauss models only
  std::vector<DistSpec> dists;
  std::vector<ConditionSpec> conditions;
  std::vector<DesignKind> designs{DesignKind::Ado};
  std::vector<UtilityKind> utilities;
  FocusKind focus = FocusKind::Parameter;
  double ucb_weight = 1.0;
  int trials = 0;
  int reps = 0;
  std::uint64_t seed = 0;
  bool metric_log = true;
  bool metric_linear = true;
  EfdTracking track_efd = EfdTracking::Off;

  bool operator==(const ExperimentConfig&) const = default;

  const DistSpec& dist(const std::string& id) const;
  UtilitySpec utility_spec(UtilityKind k) const;
};

// Parses the key = value schema. Unknown keys, duplicates and malformed
// values raise ParseError (line-anchored); cross-field problems raise
// Error(Semantic). All defaults are filled in.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Canonical text: every key, defaults included. parse(emit(c)) == c.
std::string emit_config(const ExperimentConfig& cfg);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);
std::string config_hash(const ExperimentConfig& cfg);

// Models and beliefs resolved from a config. All beliefs built from one
// setup share model objects (and therefore grids).
class ExperimentSetup {
 public:
  explicit ExperimentSetup(const ExperimentConfig& cfg);

  const ExperimentConfig& config() const noexcept { return cfg_; }
  const std::vector<ModelPtr>& models() const noexcept { return models_; }
  JointBelief belief(const std::string& dist_id, Role role) const;

  // Indices of every stimulus (the ADO candidate set).
  const std::vector<std::size_t>& candidates() const noexcept { return candidates_; }
  // Fixed-design multiset: fixed_stimuli each repeated fixed_repeats times.
  const std::vector<std::size_t>& fixed_multiset() const noexcept { return fixed_; }

 private:
  ExperimentConfig cfg_;
  std::vector<ModelPtr> models_;
  std::vector<std::size_t> candidates_;
  std::vector<std::size_t> fixed_;
};

// Discretizes one axis prior on the given axis values.
std::vector<double> axis_weights(const AxisPrior& prior,
                                 const std::vector<double>& axis_values);

}  // namespace adoprior
