#include "adoprior/utility.hpp"

#include <algorithm>
#include <vector>

#include "adoprior/error.hpp"

namespace adoprior {

namespace {

// Expected entropy of the focal predictive rows, sum_phi p(phi) H(Y | x, phi).
double expected_focal_entropy(const JointBelief& b, std::size_t x, FocusKind f,
                              std::span<const double> per_model) {
  const std::size_t ny = b.n_responses();
  switch (f) {
    case FocusKind::Model: {
      double h = 0.0;
      for (std::size_t m = 0; m < b.n_models(); ++m) {
        const double pm = b.model_probs()[m];
        if (pm == 0.0) continue;
        h += pm * entropy(per_model.subspan(m * ny, ny));
      }
      return h;
    }
    case FocusKind::Parameter:
    case FocusKind::Joint: {
      double h = 0.0;
      for (std::size_t m = 0; m < b.n_models(); ++m) {
        const double pm = b.model_probs()[m];
        if (pm == 0.0) continue;
        const auto theta = b.param_dist(m).masses();
        const auto& model = b.model(m);
        double hm = 0.0;
        for (std::size_t t = 0; t < theta.size(); ++t) {
          hm += theta[t] * model.row_entropy(x, t);
        }
        h += pm * hm;
      }
      return h;
    }
  }
  return 0.0;
}

double information(const JointBelief& b, std::size_t x, FocusKind f) {
  std::vector<double> per_model, mixture;
  model_predictive_rows(b, x, per_model, mixture);
  const double mi = entropy(mixture) - expected_focal_entropy(b, x, f, per_model);
  return std::max(mi, 0.0);
}

void require_parameter_focus_ok(const JointBelief& b, FocusKind f) {
  if (f == FocusKind::Parameter && b.n_models() != 1) {
    throw Error(ErrorCode::Ambiguity,
                "parameter focus requires a single-model belief");
  }
}

}  // namespace

const char* utility_name(UtilityKind k) {
  switch (k) {
    case UtilityKind::MiParameter: return "mi-parameter";
    case UtilityKind::MiModel: return "mi-model";
    case UtilityKind::TotalEntropy: return "total-entropy";
    case UtilityKind::Ucb: return "ucb";
  }
  return "?";
}

UtilityKind parse_utility(const std::string& s) {
  if (s == "mi-parameter") return UtilityKind::MiParameter;
  if (s == "mi-model") return UtilityKind::MiModel;
  if (s == "total-entropy") return UtilityKind::TotalEntropy;
  if (s == "ucb") return UtilityKind::Ucb;
  throw Error(ErrorCode::Lookup, "unknown utility kind '" + s + "'");
}

double mi_utility(const JointBelief& b, std::size_t x, FocusKind f) {
  if (f == FocusKind::Joint) {
    throw Error(ErrorCode::UnsupportedKind,
                "joint focus: use the total-entropy utility");
  }
  require_parameter_focus_ok(b, f);
  return information(b, x, f);
}

double mi_utility_via_kl(const JointBelief& b, std::size_t x, FocusKind f) {
  require_parameter_focus_ok(b, f);
  const DiscreteDist predictive = prior_predictive(b, x);
  const DiscreteDist prior_focus = marginal(b, f);
  double u = 0.0;
  for (std::size_t y = 0; y < predictive.size(); ++y) {
    if (predictive[y] == 0.0) continue;
    const DiscreteDist posterior_focus = marginal(update(b, x, y), f);
    u += predictive[y] * kl_divergence(posterior_focus, prior_focus);
  }
  return u;
}

double total_entropy_utility(const JointBelief& b, std::size_t x,
                             bool* single_model_warning) {
  if (single_model_warning) *single_model_warning = b.n_models() == 1;
  return information(b, x, FocusKind::Joint);
}

double ucb_utility(const JointBelief& b, std::size_t x, FocusKind f,
                   double weight) {
  return mi_utility(b, x, f) + weight * entropy(prior_predictive(b, x));
}

double global_utility(const JointBelief& b, std::size_t x, const UtilitySpec& u) {
  switch (u.kind) {
    case UtilityKind::MiParameter: return mi_utility(b, x, FocusKind::Parameter);
    case UtilityKind::MiModel: return mi_utility(b, x, FocusKind::Model);
    case UtilityKind::TotalEntropy: return total_entropy_utility(b, x);
    case UtilityKind::Ucb: return ucb_utility(b, x, u.ucb_focus, u.ucb_weight);
  }
  throw Error(ErrorCode::UnsupportedKind, "unknown utility kind");
}

}  // namespace adoprior
