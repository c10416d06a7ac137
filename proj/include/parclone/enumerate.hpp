#pragma once

#include <functional>

#include "parclone/relation.hpp"

namespace parclone {

// Conjunction of constraints on enumerated functions: preservation of each
// listed relation, plus totality when total_only is set.
struct FnFilter {
    std::vector<Relation> preserve;
    bool total_only = false;
};

struct EnumOptions {
    // Partial-function enumeration refuses k^n > 27 cells unless overridden.
    bool allow_large = false;
    // Worker count for count_fns; 0 reads PARCLONE_THREADS (default 1).
    // Streaming enumeration is always sequential to keep its order guarantee.
    int threads = 0;
};

// PARCLONE_THREADS, clamped to [1, 64]; 1 when unset or unparsable.
int env_worker_count();

inline constexpr std::uint32_t kMaxPartialEnumCells = 27;
inline constexpr std::uint32_t kMaxTotalEnumCells = 1024;

// Visits every function of arity n on {0..k-1} satisfying the filter, exactly
// once, in ascending canonical-key order (undefined sorts before value 0).
// Backtracks cell by cell; unary constraints restrict per-cell candidate
// values up front, binary constraints are forward-checked incrementally, and
// relations of arity >= 3 are re-checked on completion. The visitor returns
// false to stop early. Returns the number of functions visited.
std::uint64_t for_each_fn(int k, int n, const FnFilter& filter,
                          const std::function<bool(const PartialFn&)>& visit,
                          const EnumOptions& opts = {});

std::vector<PartialFn> enumerate_fns(int k, int n, const FnFilter& filter,
                                     const EnumOptions& opts = {});

std::uint64_t count_fns(int k, int n, const FnFilter& filter, const EnumOptions& opts = {});

}  // namespace parclone
