#pragma once

#include <optional>

#include "parclone/partial_fn.hpp"

namespace parclone {

// all_points scans every a != b; unit_vectors_only restricts the collision
// candidates to the unit vectors and the zero vector. The restricted mode is
// sound for refuting separation (a collision found there is a collision);
// a separated-by outcome under it only says no candidate point collided.
enum class WitnessMode { all_points, unit_vectors_only };

struct SeparationInstance {
    int k = 2;
    int n = 2;                    // arity of the pool functions
    std::vector<PartialFn> pool;  // total functions of arity n
    int m = 1;                    // family size
    std::vector<Value> b;         // point to separate; empty = all-zero
};

struct TupleRefutation {
    std::vector<std::uint32_t> indices;  // pool positions of the examined m-tuple
    std::vector<Value> collision;        // a != b with identical image tuple
};

struct SeparationReport {
    enum class Outcome { separated_by, no_family, resource_limit };
    Outcome outcome = Outcome::no_family;
    std::vector<std::uint32_t> separating_indices;  // when separated_by
    std::vector<TupleRefutation> refutations;       // when no_family: one per tuple
    std::uint64_t tuples_examined = 0;
};

// First collision point a != b (in candidate order) whose image tuple under
// fns equals the image tuple of b, or nullopt when fns separate b from every
// candidate. All fns must be total and share arity and k.
std::optional<std::vector<Value>> separates_point(std::span<const PartialFn> fns,
                                                  std::span<const Value> b,
                                                  WitnessMode mode = WitnessMode::all_points);

// Searches m-element subsets of the pool (combinations without repetition,
// lexicographic by canonical key) for one whose joint image separates b.
SeparationReport exists_separating_family(const SeparationInstance& instance,
                                          WitnessMode mode = WitnessMode::all_points,
                                          std::uint64_t max_tuples = 10'000'000);

}  // namespace parclone
