#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqtree/automorphism.hpp"
#include "eqtree/quotient.hpp"
#include "eqtree/random.hpp"

namespace eqtree {

struct GenSpec {
  std::uint32_t n = 1;  // total weight, i.e. vertex count of the instance
  Color k = 1;
  Weight max_orbit = 4;
  std::uint64_t seed = 0;
  double loop_probability = 0.0;  // chance of an instance whose centers are swapped
  Mode mode = Mode::Generic;
};

// Random quotient of total weight n, rooted at vertex 0 of weight 1, with
// child weights drawn as multiples of parent weights (capped by max_orbit).
QuotientTree random_quotient(std::uint32_t n, Color k, Weight max_orbit, Rng& rng);

// Grows a random quotient and expands it, or (with loop_probability, even n)
// joins two copies of a half-size expansion by a central edge that P swaps.
// The result is randomly relabeled. Pure function of the spec.
// Throws InfeasibleSpec.
EquippedColoredTree gen_equipped(const GenSpec& spec);

// Relabeling by a random ρ, with P conjugated to ρ P ρ^-1 and the edge list shuffled.
EquippedColoredTree random_relabel(const EquippedColoredTree& et, Rng& rng);

enum class PairKind { Iso, NonIso };

struct InstancePair {
  EquippedColoredTree first;
  EquippedColoredTree second;
  bool expected;
  std::string mutation;
};

// Iso: a conjugated relabeling. NonIso: one random mutation (recolor an edge
// orbit, change a leaf orbit weight, reattach an orbit subtree), confirmed
// by iso_brute for n <= 12 and by canonical codes above that, then
// relabeled. If no confirmed mutation is found, expected is true.
InstancePair make_pair(const EquippedColoredTree& et, PairKind kind, std::uint64_t seed);

}  // namespace eqtree
