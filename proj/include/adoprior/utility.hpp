#pragma once

#include <cstddef>
#include <string>

#include "adoprior/belief.hpp"

namespace adoprior {

enum class UtilityKind { MiParameter, MiModel, TotalEntropy, Ucb };

const char* utility_name(UtilityKind k);
UtilityKind parse_utility(const std::string& s);

// I(Phi; Y | x) under the belief, as H(Y | x) minus the expected focal
// predictive entropy. Parameter focus needs a single-model belief; joint
// focus is rejected with UnsupportedKind (see total_entropy_utility).
double mi_utility(const JointBelief& b, std::size_t x, FocusKind f);

// Same quantity as the expected KL divergence from the posterior focus
// distribution to the prior one, built from explicit Bayesian updates.
// Independent of mi_utility's arithmetic; used as its oracle. Also accepts
// joint focus.
double mi_utility_via_kl(const JointBelief& b, std::size_t x, FocusKind f);

// Mutual information between the joint (model, parameter) state and Y.
// On a single-model belief it still computes (and equals the parameter-focus
// MI) but sets *single_model_warning when provided.
double total_entropy_utility(const JointBelief& b, std::size_t x,
                             bool* single_model_warning = nullptr);

// MI plus weight times the entropy of the prior predictive.
double ucb_utility(const JointBelief& b, std::size_t x, FocusKind f,
                   double weight = 1.0);

struct UtilitySpec {
  UtilityKind kind = UtilityKind::MiParameter;
  FocusKind ucb_focus = FocusKind::Parameter;  // focus of the UCB MI term
  double ucb_weight = 1.0;

  bool operator==(const UtilitySpec&) const = default;
};

double global_utility(const JointBelief& b, std::size_t x, const UtilitySpec& u);

}  // namespace adoprior
