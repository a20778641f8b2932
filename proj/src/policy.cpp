#include "adoprior/policy.hpp"

#include <utility>

#include "adoprior/error.hpp"

namespace adoprior {

const char* design_name(DesignKind d) {
  switch (d) {
    case DesignKind::Ado: return "ado";
    case DesignKind::Fixed: return "fixed";
    case DesignKind::Random: return "random";
  }
  return "?";
}

DesignKind parse_design(const std::string& s) {
  if (s == "ado") return DesignKind::Ado;
  if (s == "fixed") return DesignKind::Fixed;
  if (s == "random") return DesignKind::Random;
  throw Error(ErrorCode::Lookup, "unknown design '" + s + "'");
}

std::size_t argmax_first(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::Configuration, "empty candidate list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

Selection ado_select(const JointBelief& b, std::span<const std::size_t> candidates,
                     const UtilitySpec& utility) {
  if (candidates.empty()) throw Error(ErrorCode::Configuration, "empty candidate list");
  std::vector<double> values(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    values[i] = global_utility(b, candidates[i], utility);
  }
  const std::size_t best = argmax_first(values);
  return {candidates[best], values[best]};
}

std::vector<std::size_t> make_fixed_schedule(std::span<const std::size_t> stimuli,
                                             RngStream& rng) {
  if (stimuli.empty()) throw Error(ErrorCode::Configuration, "empty fixed schedule");
  std::vector<std::size_t> order(stimuli.begin(), stimuli.end());
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.below(i + 1)]);
  }
  return order;
}

std::size_t random_select(std::span<const std::size_t> candidates, RngStream& rng) {
  if (candidates.empty()) throw Error(ErrorCode::Configuration, "empty candidate list");
  return candidates[rng.below(candidates.size())];
}

}  // namespace adoprior
