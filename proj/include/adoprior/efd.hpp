#pragma once

#include <cstddef>

#include "adoprior/belief.hpp"

namespace adoprior {

// Parts of the expected focal divergence, in nats. Hindsight is an expected
// log likelihood and is usually negative.
struct EfdBreakdown {
  double response_variability = 0.0;
  double surprisal = 0.0;
  double hindsight = 0.0;
  double total = 0.0;
};

// p0(y | x): the prior predictive of the population belief.
DiscreteDist response_distribution(const JointBelief& pop, std::size_t x);

// sum_y p0(y | x) KL(spec focus posterior after (x, y) || spec focus prior).
// Parameter or model focus. Throws Shape when the beliefs do not share models
// and grids, and ImpossibleObservation when the population can produce a
// response the specified belief rules out.
double expected_focal_divergence(const JointBelief& spec, const JointBelief& pop,
                                 std::size_t x, FocusKind f);

// Response variability H(p0) + surprisal KL(p0 || p1) + hindsight
// sum_y p0(y) sum_phi p1(phi | y) ln p1(y | phi).
EfdBreakdown efd_decomposition(const JointBelief& spec, const JointBelief& pop,
                               std::size_t x, FocusKind f);

}  // namespace adoprior
