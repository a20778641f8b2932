#pragma once

#include <cmath>
#include <vector>

#include "adoprior/belief.hpp"
#include "adoprior/dist.hpp"
#include "adoprior/models.hpp"
#include "adoprior/rng.hpp"

namespace fixtures {

using namespace adoprior;

inline ModelPtr irt_model() {
  const auto grid = linspace(-3, 3, 31);
  return ResponseModel::make("irt", grid, ParamGrid({{"theta", grid}}));
}

inline ParamGrid retention_grid(int n) {
  return ParamGrid({{"a", cell_midpoints(n)}, {"b", cell_midpoints(n)}});
}

inline std::vector<double> delays() {
  std::vector<double> x;
  for (int i = 0; i <= 100; i += 5) x.push_back(i);
  return x;
}

inline std::vector<ModelPtr> retention_models(int n) {
  return {ResponseModel::make("pow", delays(), retention_grid(n)),
          ResponseModel::make("exp", delays(), retention_grid(n))};
}

inline std::vector<ModelPtr> gauss_models() {
  const auto bins = linspace(-40, 40, 81);
  const ParamGrid grid({{"mu", linspace(-30, 30, 61)}});
  return {ResponseModel::make("gauss-a", {0.0}, grid, bins),
          ResponseModel::make("gauss-b", {0.0}, grid, bins)};
}

// N(mu, sd) discretized on the model's single parameter axis.
inline DiscreteDist normal_prior(const ModelPtr& m, double mu, double sd) {
  const auto d = discretize_normal(mu, sd, m->grid().axes()[0].values);
  return DiscreteDist(m->grid().support(),
                      std::vector<double>(d.masses().begin(), d.masses().end()));
}

// Random weights; with sparse set, roughly a quarter of the entries are zero
// (at least one stays positive).
inline std::vector<double> random_weights(RngStream& rng, std::size_t n, bool sparse = false) {
  std::vector<double> w(n);
  bool any = false;
  for (auto& v : w) {
    const double u = rng.uniform();
    v = sparse && rng.uniform() < 0.25 ? 0.0 : -std::log(1.0 - u);
    any = any || v > 0.0;
  }
  if (!any) w[rng.below(n)] = 1.0;
  return w;
}

inline DiscreteDist random_dist(RngStream& rng, const SupportPtr& support,
                                bool sparse = false) {
  return DiscreteDist(support, random_weights(rng, support->size(), sparse));
}

// A random belief over the given models (model probabilities and parameter
// masses drawn independently).
inline JointBelief random_belief(RngStream& rng, const std::vector<ModelPtr>& models,
                                 Role role, bool sparse = false) {
  std::vector<DiscreteDist> params;
  std::vector<std::string> ids;
  for (const auto& m : models) {
    params.push_back(random_dist(rng, m->grid().support(), sparse));
    ids.push_back(m->id());
  }
  return JointBelief(models, DiscreteDist(Support::of_ids(ids), random_weights(rng, models.size())),
                     std::move(params), role);
}

struct Family {
  const char* name;
  std::vector<ModelPtr> models;
};

// Every model family, single- and multi-model, on grids small enough for
// brute-force checks.
inline std::vector<Family> families() {
  const auto ret = retention_models(6);
  const auto gauss = gauss_models();
  return {
      {"irt", {irt_model()}},
      {"pow", {ret[0]}},
      {"exp", {ret[1]}},
      {"pow+exp", ret},
      {"gauss-a", {gauss[0]}},
      {"gauss-a+gauss-b", gauss},
  };
}

}  // namespace fixtures
