#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "adoprior/dist.hpp"
#include "adoprior/models.hpp"

namespace adoprior {

// Specified (experimenter) vs population (system under study). Metadata only;
// both share every code path.
enum class Role { Specified, Population };

enum class FocusKind { Parameter, Model, Joint };

const char* focus_name(FocusKind f);
FocusKind parse_focus(const std::string& s);

// Masses below this are raised to it after an update.
inline constexpr double kLogMassFloor = -690.0;

// Joint distribution over models and per-model parameter grids, stored in
// factorized form p(m) p(theta | m). All models share one stimulus list.
class JointBelief {
 public:
  JointBelief(std::vector<ModelPtr> models, DiscreteDist model_probs,
              std::vector<DiscreteDist> param_dists, Role role);

  static JointBelief single(ModelPtr model, DiscreteDist params, Role role);

  std::size_t n_models() const noexcept { return models_.size(); }
  const std::vector<ModelPtr>& models() const noexcept { return models_; }
  const ResponseModel& model(std::size_t m) const { return *models_[m]; }
  const DiscreteDist& model_probs() const noexcept { return model_probs_; }
  const DiscreteDist& param_dist(std::size_t m) const { return param_dists_[m]; }
  Role role() const noexcept { return role_; }

  std::span<const double> stimuli() const { return models_.front()->stimuli(); }
  std::size_t n_stimuli() const { return models_.front()->n_stimuli(); }
  std::size_t n_responses() const { return models_.front()->n_responses(); }
  std::size_t stimulus_index(double x) const;
  // Throws Lookup for unknown ids.
  std::size_t model_index(const std::string& id) const;

  // Number of masses raised to the floor over this belief's update history.
  std::size_t floor_events() const noexcept { return floor_events_; }

  JointBelief with_role(Role role) const;

  // True when both beliefs are defined over the same models and grids.
  bool compatible_with(const JointBelief& other) const;

 private:
  friend JointBelief update(const JointBelief&, std::size_t, std::size_t);

  std::vector<ModelPtr> models_;
  DiscreteDist model_probs_;
  std::vector<DiscreteDist> param_dists_;
  Role role_;
  std::size_t floor_events_ = 0;
};

// Focal predictive rows of every model at stimulus x (row-major, models x
// responses) and their mixture, without building distributions.
void model_predictive_rows(const JointBelief& b, std::size_t x,
                           std::vector<double>& per_model,
                           std::vector<double>& mixture);

// p(y | x) = sum_m p(m) sum_theta p(y | x, theta, m) p(theta | m).
DiscreteDist prior_predictive(const JointBelief& b, std::size_t x);

// phi is a model id (model focus) or a grid point of the single model
// (parameter focus); the latter is the raw likelihood row.
DiscreteDist focal_predictive(const JointBelief& b, std::size_t x,
                              const Atom& phi);

// Posterior after observing response index y at stimulus index x. Throws
// ImpossibleObservation when the observation has zero predictive mass.
JointBelief update(const JointBelief& b, std::size_t x, std::size_t y);

// p(y | x, m1) / p(y | x, m2) under the belief's parameter priors; +inf when
// the denominator vanishes.
double bayes_factor(const JointBelief& b, std::size_t x, std::size_t y,
                    const std::string& m1, const std::string& m2);

// Distribution over focus values. Parameter focus requires a single-model
// belief (Ambiguity otherwise). Joint focus labels atoms "model@(point)".
DiscreteDist marginal(const JointBelief& b, FocusKind f);

}  // namespace adoprior
