#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "adoprior/belief.hpp"
#include "adoprior/rng.hpp"
#include "adoprior/utility.hpp"

namespace adoprior {

enum class DesignKind { Ado, Fixed, Random };

const char* design_name(DesignKind d);
DesignKind parse_design(const std::string& s);

struct Selection {
  std::size_t stimulus = 0;  // index into the belief's stimulus list
  double utility = 0.0;
};

// Index of the largest value; ties go to the lowest index. Throws
// Configuration on an empty list.
std::size_t argmax_first(std::span<const double> values);

// Greedy ADO step: evaluates the utility of every candidate (stimulus
// indices) under the current belief and returns the best one.
Selection ado_select(const JointBelief& b, std::span<const std::size_t> candidates,
                     const UtilitySpec& utility);

// Seeded Fisher-Yates permutation of the multiset of stimuli.
std::vector<std::size_t> make_fixed_schedule(std::span<const std::size_t> stimuli,
                                             RngStream& rng);

std::size_t random_select(std::span<const std::size_t> candidates, RngStream& rng);

}  // namespace adoprior
