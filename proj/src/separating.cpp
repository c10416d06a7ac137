#include "parclone/separating.hpp"

#include <algorithm>
#include <numeric>

namespace parclone {

namespace {

// Candidate collision points in ascending index order, excluding b.
std::vector<std::uint32_t> candidate_cells(int k, int n, std::uint32_t b_cell, WitnessMode mode) {
    std::vector<std::uint32_t> out;
    if (mode == WitnessMode::all_points) {
        const std::uint32_t cells = cell_count(k, n);
        for (std::uint32_t c = 0; c < cells; ++c)
            if (c != b_cell) out.push_back(c);
    } else {
        out.push_back(0);  // zero vector
        std::uint32_t place = 1;
        for (int i = n; i >= 1; --i) {  // e_i has index k^(n-i)
            out.push_back(place);
            place *= static_cast<std::uint32_t>(k);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::remove(out.begin(), out.end(), b_cell), out.end());
    }
    return out;
}

void validate_pool_fn(const PartialFn& f, int k, int n) {
    require(f.k() == k && f.arity() == n, "pool function k/arity mismatch");
    require(f.is_total(), "separation pools need total functions");
}

}  // namespace

std::optional<std::vector<Value>> separates_point(std::span<const PartialFn> fns,
                                                  std::span<const Value> b, WitnessMode mode) {
    require(!fns.empty(), "separation needs at least one function");
    const int k = fns.front().k();
    const int n = fns.front().arity();
    for (const PartialFn& f : fns) validate_pool_fn(f, k, n);
    const std::uint32_t b_cell = encode_point(k, b);

    for (std::uint32_t a : candidate_cells(k, n, b_cell, mode)) {
        bool collide = true;
        for (const PartialFn& f : fns)
            if (f.table()[a] != f.table()[b_cell]) {
                collide = false;
                break;
            }
        if (collide) return decode_point(k, n, a);
    }
    return std::nullopt;
}

SeparationReport exists_separating_family(const SeparationInstance& instance, WitnessMode mode,
                                          std::uint64_t max_tuples) {
    const int k = instance.k;
    const int n = instance.n;
    check_domain(k);
    check_arity(n);
    require(instance.m >= 1, "family size m must be >= 1");
    for (const PartialFn& f : instance.pool) validate_pool_fn(f, k, n);
    std::vector<Value> b = instance.b;
    if (b.empty()) b.assign(static_cast<std::size_t>(n), 0);
    const std::uint32_t b_cell = encode_point(k, b);

    // examine combinations in lexicographic order of canonical keys
    std::vector<std::uint32_t> order(instance.pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        return instance.pool[x].key() < instance.pool[y].key();
    });

    const auto candidates = candidate_cells(k, n, b_cell, mode);
    const auto m = static_cast<std::size_t>(instance.m);

    SeparationReport report;
    if (instance.pool.size() < m) {
        report.outcome = SeparationReport::Outcome::no_family;
        return report;  // no m-subset exists; vacuously not separating
    }

    std::vector<std::size_t> comb(m);
    std::iota(comb.begin(), comb.end(), 0);
    for (;;) {
        if (report.tuples_examined >= max_tuples) {
            report.outcome = SeparationReport::Outcome::resource_limit;
            return report;
        }
        ++report.tuples_examined;

        std::optional<std::uint32_t> collision;
        for (std::uint32_t a : candidates) {
            bool collide = true;
            for (std::size_t j = 0; j < m; ++j) {
                const PartialFn& f = instance.pool[order[comb[j]]];
                if (f.table()[a] != f.table()[b_cell]) {
                    collide = false;
                    break;
                }
            }
            if (collide) {
                collision = a;
                break;
            }
        }
        if (!collision) {
            report.outcome = SeparationReport::Outcome::separated_by;
            for (std::size_t j = 0; j < m; ++j) report.separating_indices.push_back(order[comb[j]]);
            return report;
        }
        TupleRefutation ref;
        for (std::size_t j = 0; j < m; ++j) ref.indices.push_back(order[comb[j]]);
        ref.collision = decode_point(k, n, *collision);
        report.refutations.push_back(std::move(ref));

        // next combination
        std::size_t i = m;
        while (i > 0 && comb[i - 1] == instance.pool.size() - m + (i - 1)) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < m; ++j) comb[j] = comb[j - 1] + 1;
    }
    report.outcome = SeparationReport::Outcome::no_family;
    return report;
}

}  // namespace parclone
