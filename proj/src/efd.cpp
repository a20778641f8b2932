#include "adoprior/efd.hpp"

#include <cmath>
#include <vector>

#include "adoprior/error.hpp"

namespace adoprior {

namespace {

// Focus values of the specified belief with their prior masses and focal
// predictive rows at one stimulus.
struct FocusTable {
  std::vector<double> prior;
  std::vector<double> rows;  // focus-major, n_responses per focus value
  std::vector<double> predictive;
  std::size_t ny = 0;

  std::span<const double> row(std::size_t phi) const {
    return {rows.data() + phi * ny, ny};
  }
};

FocusTable focus_table(const JointBelief& spec, std::size_t x, FocusKind f) {
  FocusTable table;
  table.ny = spec.n_responses();
  std::vector<double> per_model;
  model_predictive_rows(spec, x, per_model, table.predictive);
  switch (f) {
    case FocusKind::Model:
      table.prior.assign(spec.model_probs().masses().begin(),
                         spec.model_probs().masses().end());
      table.rows = std::move(per_model);
      return table;
    case FocusKind::Parameter: {
      if (spec.n_models() != 1) {
        throw Error(ErrorCode::Ambiguity,
                    "parameter focus requires a single-model belief");
      }
      const auto theta = spec.param_dist(0).masses();
      table.prior.assign(theta.begin(), theta.end());
      table.rows.resize(theta.size() * table.ny);
      for (std::size_t t = 0; t < theta.size(); ++t) {
        const auto r = spec.model(0).row(x, t);
        std::copy(r.begin(), r.end(), table.rows.begin() + t * table.ny);
      }
      return table;
    }
    case FocusKind::Joint:
      break;
  }
  throw Error(ErrorCode::UnsupportedKind,
              "expected focal divergence supports parameter or model focus");
}

void check_pair(const JointBelief& spec, const JointBelief& pop) {
  if (!spec.compatible_with(pop)) {
    throw Error(ErrorCode::Shape,
                "specified and population beliefs use different models or grids");
  }
}

void check_support(const FocusTable& table, const DiscreteDist& p0) {
  for (std::size_t y = 0; y < table.ny; ++y) {
    if (p0[y] > 0.0 && table.predictive[y] == 0.0) {
      throw Error(ErrorCode::ImpossibleObservation,
                  "population produces a response the specified belief rules out");
    }
  }
}

}  // namespace

DiscreteDist response_distribution(const JointBelief& pop, std::size_t x) {
  return prior_predictive(pop, x);
}

double expected_focal_divergence(const JointBelief& spec, const JointBelief& pop,
                                 std::size_t x, FocusKind f) {
  check_pair(spec, pop);
  const FocusTable table = focus_table(spec, x, f);
  const DiscreteDist p0 = response_distribution(pop, x);
  check_support(table, p0);

  std::vector<double> posterior(table.prior.size());
  double efd = 0.0;
  for (std::size_t y = 0; y < table.ny; ++y) {
    if (p0[y] == 0.0) continue;
    for (std::size_t phi = 0; phi < table.prior.size(); ++phi) {
      posterior[phi] = table.prior[phi] * table.row(phi)[y] / table.predictive[y];
    }
    efd += p0[y] * kl_divergence(posterior, table.prior);
  }
  return efd;
}

EfdBreakdown efd_decomposition(const JointBelief& spec, const JointBelief& pop,
                               std::size_t x, FocusKind f) {
  check_pair(spec, pop);
  const FocusTable table = focus_table(spec, x, f);
  const DiscreteDist p0 = response_distribution(pop, x);
  check_support(table, p0);

  EfdBreakdown out;
  out.response_variability = entropy(p0);
  out.surprisal = kl_divergence(p0.masses(), table.predictive);
  for (std::size_t y = 0; y < table.ny; ++y) {
    if (p0[y] == 0.0) continue;
    double expected_loglik = 0.0;
    for (std::size_t phi = 0; phi < table.prior.size(); ++phi) {
      const double lik = table.row(phi)[y];
      const double post = table.prior[phi] * lik / table.predictive[y];
      if (post == 0.0) continue;
      expected_loglik += post * std::log(lik);
    }
    out.hindsight += p0[y] * expected_loglik;
  }
  out.total = out.response_variability + out.surprisal + out.hindsight;
  return out;
}

}  // namespace adoprior
