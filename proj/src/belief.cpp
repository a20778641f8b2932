#include "adoprior/belief.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adoprior/error.hpp"

namespace adoprior {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Exponentiates log weights relative to their maximum and normalizes; masses
// that started positive but fall below the floor are raised to it.
std::vector<double> normalize_logs(std::span<const double> logw,
                                   std::size_t& floor_events) {
  double top = kNegInf;
  for (double v : logw) top = std::max(top, v);
  std::vector<double> out(logw.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    if (logw[i] == kNegInf) continue;
    out[i] = std::exp(logw[i] - top);
    total += out[i];
  }
  const double log_total = std::log(total);
  const double floor = std::exp(kLogMassFloor);
  for (std::size_t i = 0; i < logw.size(); ++i) {
    if (logw[i] == kNegInf) continue;
    if (logw[i] - top - log_total < kLogMassFloor) {
      out[i] = floor;
      ++floor_events;
    } else {
      out[i] /= total;
    }
  }
  return out;
}

}  // namespace

const char* focus_name(FocusKind f) {
  switch (f) {
    case FocusKind::Parameter: return "parameter";
    case FocusKind::Model: return "model";
    case FocusKind::Joint: return "joint";
  }
  return "?";
}

FocusKind parse_focus(const std::string& s) {
  if (s == "parameter") return FocusKind::Parameter;
  if (s == "model") return FocusKind::Model;
  if (s == "joint") return FocusKind::Joint;
  throw Error(ErrorCode::Lookup, "unknown focus '" + s + "'");
}

JointBelief::JointBelief(std::vector<ModelPtr> models, DiscreteDist model_probs,
                         std::vector<DiscreteDist> param_dists, Role role)
    : models_(std::move(models)),
      model_probs_(std::move(model_probs)),
      param_dists_(std::move(param_dists)),
      role_(role) {
  if (models_.empty()) throw Error(ErrorCode::Shape, "belief has no models");
  if (model_probs_.size() != models_.size() ||
      param_dists_.size() != models_.size()) {
    throw Error(ErrorCode::Shape, "belief: one probability and one parameter "
                                  "distribution per model required");
  }
  const auto first_stimuli = models_.front()->stimuli();
  const std::size_t ny = models_.front()->n_responses();
  for (std::size_t m = 0; m < models_.size(); ++m) {
    const auto& model = *models_[m];
    if (!std::equal(first_stimuli.begin(), first_stimuli.end(),
                    model.stimuli().begin(), model.stimuli().end())) {
      throw Error(ErrorCode::Shape, "belief: models disagree on stimuli");
    }
    if (model.n_responses() != ny) {
      throw Error(ErrorCode::Shape, "belief: models disagree on responses");
    }
    if (!same_support(param_dists_[m].support(), model.grid().support())) {
      throw Error(ErrorCode::Shape,
                  "belief: parameter distribution not on grid of " + model.id());
    }
    for (std::size_t k = 0; k < m; ++k) {
      if (models_[k]->id() == model.id()) {
        throw Error(ErrorCode::Shape, "belief: duplicate model " + model.id());
      }
    }
  }
}

JointBelief JointBelief::single(ModelPtr model, DiscreteDist params, Role role) {
  auto ids = Support::of_ids({model->id()});
  return JointBelief({std::move(model)}, DiscreteDist::point_mass(ids, 0),
                     {std::move(params)}, role);
}

std::size_t JointBelief::stimulus_index(double x) const {
  return models_.front()->stimulus_index(x);
}

std::size_t JointBelief::model_index(const std::string& id) const {
  for (std::size_t m = 0; m < models_.size(); ++m) {
    if (models_[m]->id() == id) return m;
  }
  throw Error(ErrorCode::Lookup, "model '" + id + "' not in belief");
}

JointBelief JointBelief::with_role(Role role) const {
  JointBelief copy = *this;
  copy.role_ = role;
  return copy;
}

bool JointBelief::compatible_with(const JointBelief& other) const {
  if (n_models() != other.n_models()) return false;
  for (std::size_t m = 0; m < n_models(); ++m) {
    const auto& a = *models_[m];
    const auto& b = *other.models_[m];
    if (models_[m] == other.models_[m]) continue;
    if (a.id() != b.id() || !(a.grid() == b.grid()) ||
        !std::equal(a.stimuli().begin(), a.stimuli().end(), b.stimuli().begin(),
                    b.stimuli().end()) ||
        a.responses()->atoms() != b.responses()->atoms()) {
      return false;
    }
  }
  return true;
}

void model_predictive_rows(const JointBelief& b, std::size_t x,
                           std::vector<double>& per_model,
                           std::vector<double>& mixture) {
  if (x >= b.n_stimuli()) throw Error(ErrorCode::Shape, "stimulus index out of range");
  const std::size_t ny = b.n_responses();
  per_model.assign(b.n_models() * ny, 0.0);
  mixture.assign(ny, 0.0);
  for (std::size_t m = 0; m < b.n_models(); ++m) {
    const auto& model = b.model(m);
    const auto theta = b.param_dist(m).masses();
    double* row_out = per_model.data() + m * ny;
    for (std::size_t t = 0; t < theta.size(); ++t) {
      if (theta[t] == 0.0) continue;
      const auto row = model.row(x, t);
      for (std::size_t y = 0; y < ny; ++y) row_out[y] += theta[t] * row[y];
    }
    const double pm = b.model_probs()[m];
    for (std::size_t y = 0; y < ny; ++y) mixture[y] += pm * row_out[y];
  }
}

DiscreteDist prior_predictive(const JointBelief& b, std::size_t x) {
  std::vector<double> per_model, mixture;
  model_predictive_rows(b, x, per_model, mixture);
  return DiscreteDist(b.model(0).responses(), std::move(mixture));
}

DiscreteDist focal_predictive(const JointBelief& b, std::size_t x,
                              const Atom& phi) {
  if (x >= b.n_stimuli()) throw Error(ErrorCode::Shape, "stimulus index out of range");
  if (const auto* id = std::get_if<std::string>(&phi)) {
    const std::size_t m = b.model_index(*id);
    const auto& model = b.model(m);
    std::vector<double> row(model.n_responses(), 0.0);
    const auto theta = b.param_dist(m).masses();
    for (std::size_t t = 0; t < theta.size(); ++t) {
      if (theta[t] == 0.0) continue;
      const auto r = model.row(x, t);
      for (std::size_t y = 0; y < row.size(); ++y) row[y] += theta[t] * r[y];
    }
    return DiscreteDist(model.responses(), std::move(row));
  }
  if (b.n_models() != 1) {
    throw Error(ErrorCode::Ambiguity,
                "parameter focus value on a multi-model belief");
  }
  const Atom key = std::holds_alternative<double>(phi)
                       ? Atom{Point{std::get<double>(phi)}}
                       : phi;
  const std::size_t t = b.model(0).grid().support()->find(key);
  if (t == Support::npos) {
    throw Error(ErrorCode::Lookup, "focus value " + atom_to_string(phi) +
                                       " not on the parameter grid");
  }
  const auto r = b.model(0).row(x, t);
  return DiscreteDist(b.model(0).responses(), std::vector<double>(r.begin(), r.end()));
}

JointBelief update(const JointBelief& b, std::size_t x, std::size_t y) {
  if (x >= b.n_stimuli()) throw Error(ErrorCode::Shape, "stimulus index out of range");
  if (y >= b.n_responses()) throw Error(ErrorCode::Lookup, "response index out of range");

  JointBelief out = b;
  std::vector<double> model_logs(b.n_models(), kNegInf);
  std::vector<double> logw;
  for (std::size_t m = 0; m < b.n_models(); ++m) {
    const double pm = b.model_probs()[m];
    if (pm == 0.0) continue;
    const auto& model = b.model(m);
    const auto theta = b.param_dist(m).masses();
    logw.assign(theta.size(), kNegInf);
    double top = kNegInf;
    for (std::size_t t = 0; t < theta.size(); ++t) {
      const double lik = model.likelihood(x, t, y);
      if (theta[t] == 0.0 || lik == 0.0) continue;
      logw[t] = std::log(theta[t]) + std::log(lik);
      top = std::max(top, logw[t]);
    }
    if (top == kNegInf) continue;  // model cannot produce y; keep its old grid
    double sum = 0.0;
    for (double v : logw) {
      if (v != kNegInf) sum += std::exp(v - top);
    }
    model_logs[m] = std::log(pm) + top + std::log(sum);
    out.param_dists_[m] = DiscreteDist(model.grid().support(),
                                       normalize_logs(logw, out.floor_events_));
  }
  if (std::all_of(model_logs.begin(), model_logs.end(),
                  [](double v) { return v == kNegInf; })) {
    throw Error(ErrorCode::ImpossibleObservation,
                "observed response has zero predictive probability");
  }
  out.model_probs_ = DiscreteDist(b.model_probs().support(),
                                  normalize_logs(model_logs, out.floor_events_));
  return out;
}

double bayes_factor(const JointBelief& b, std::size_t x, std::size_t y,
                    const std::string& m1, const std::string& m2) {
  const double num = focal_predictive(b, x, Atom{m1})[y];
  const double den = focal_predictive(b, x, Atom{m2})[y];
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

DiscreteDist marginal(const JointBelief& b, FocusKind f) {
  switch (f) {
    case FocusKind::Model:
      return b.model_probs();
    case FocusKind::Parameter:
      if (b.n_models() != 1) {
        throw Error(ErrorCode::Ambiguity,
                    "parameter focus is ambiguous on a multi-model belief");
      }
      return b.param_dist(0);
    case FocusKind::Joint: {
      std::vector<std::string> labels;
      std::vector<double> mass;
      for (std::size_t m = 0; m < b.n_models(); ++m) {
        const auto& grid = b.model(m).grid();
        for (std::size_t t = 0; t < grid.size(); ++t) {
          labels.push_back(b.model(m).id() + "@" + atom_to_string(grid.point(t)));
          mass.push_back(b.model_probs()[m] * b.param_dist(m)[t]);
        }
      }
      return DiscreteDist(Support::of_ids(std::move(labels)), std::move(mass));
    }
  }
  throw Error(ErrorCode::UnsupportedKind, "unknown focus kind");
}

}  // namespace adoprior
