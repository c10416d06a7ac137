#pragma once

#include <optional>

#include "parclone/enumerate.hpp"

namespace parclone {

// Bounds for a bounded-arity closure run. target_arity caps the reported
// functions; intermediate_arity caps every arity allowed during composition
// (a bounded fragment may need higher-arity intermediates to generate).
struct ClosureConfig {
    int target_arity = 3;
    int intermediate_arity = 3;
    bool strong = false;  // also close under single-cell domain deletions
    std::uint64_t max_size = 5'000'000;
    int max_rounds = 64;

    friend bool operator==(const ClosureConfig&, const ClosureConfig&) = default;
};

struct ClosureStats {
    int rounds = 0;
    std::uint64_t compositions_attempted = 0;
    std::uint64_t inserts = 0;
    std::uint64_t tuplings_built = 0;
    std::string limit_hit;  // "", "max_size", "max_rounds" or "tupling_budget"

    friend bool operator==(const ClosureStats&, const ClosureStats&) = default;
};

// Deduplicated closure output. `functions` holds the reported members of
// arity <= target_arity, `intermediates` the members of higher arity (up to
// intermediate_arity) that the fixpoint needed; both sorted by canonical key.
class ClosureResult {
  public:
    ClosureResult(int k, ClosureConfig config, bool saturated, ClosureStats stats,
                  std::vector<PartialFn> functions, std::vector<PartialFn> intermediates);

    int k() const { return k_; }
    const ClosureConfig& config() const { return config_; }
    bool saturated() const { return saturated_; }
    const ClosureStats& stats() const { return stats_; }
    const std::vector<PartialFn>& functions() const { return functions_; }
    const std::vector<PartialFn>& intermediates() const { return intermediates_; }

    // Key lookup among the reported functions; rejects arity > target_arity.
    bool contains(const PartialFn& f) const;

    friend bool operator==(const ClosureResult&, const ClosureResult&) = default;

  private:
    int k_;
    ClosureConfig config_;
    bool saturated_;
    ClosureStats stats_;
    std::vector<PartialFn> functions_;
    std::vector<PartialFn> intermediates_;
};

// Least fixpoint of {projections of arity <= intermediate} u generators under
// composition with all arities capped at intermediate_arity and, when strong,
// under single-cell domain deletions. saturated() is false exactly when a
// resource cap fired; the partial result is still sound.
ClosureResult generate(int k, std::span<const PartialFn> generators, const ClosureConfig& config);

std::vector<PartialFn> total_part(std::span<const PartialFn> fns);

// Every restriction of every projection of arity <= target_arity,
// deduplicated: the strong partial clone of all subfunctions of projections.
ClosureResult projection_subfunctions(int k, int target_arity);

enum class FragmentOutcome { equal, missing_witness, extra_witness };

struct FragmentReport {
    FragmentOutcome outcome = FragmentOutcome::equal;
    std::optional<PartialFn> witness;  // first discrepancy in key order
    std::uint64_t fragment_size = 0;   // enumerated side (when fully walked)
    std::uint64_t result_size = 0;     // n-ary members of the closure result
};

// Compares the n-ary members of a closure result against the filtered
// enumeration of all n-ary functions; stops at the first discrepancy.
FragmentReport fragment_equal(const ClosureResult& result, const FnFilter& filter, int n);

// Cache files: one header line carrying k, the config, stats and a content
// digest, then the member functions as pfn blocks.
void save_closure(const std::string& path, const ClosureResult& result);
ClosureResult load_closure(const std::string& path);
std::string format_closure(const ClosureResult& result);
ClosureResult parse_closure(std::string_view text);

}  // namespace parclone
