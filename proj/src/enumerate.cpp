#include "parclone/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <thread>

namespace parclone {

namespace {

struct Edge {
    std::uint32_t target;                // cell whose candidate set shrinks
    const std::uint64_t* mask_by_value;  // k entries: mask ANDed in when source gets value v
};

struct Search {
    int k = 0;
    int arity = 0;
    std::uint32_t cells = 0;
    bool total_only = false;
    const std::function<bool(const PartialFn&)>* visit = nullptr;  // null = count only
    std::vector<Relation> recheck;  // relations of arity >= 3

    std::vector<std::vector<Edge>> edges;  // per source cell, targets are later cells
    std::vector<std::uint64_t> allowed;    // (cells+1) slices of `cells` masks
    std::vector<std::int16_t> assignment;  // -1 = undefined, else value
    int force_first = kNoForce;            // worker split: pin the first cell's branch
    std::uint64_t visited = 0;
    bool stopped = false;

    static constexpr int kNoForce = -2;

    std::uint64_t* slice(std::uint32_t pos) { return allowed.data() + std::size_t(pos) * cells; }

    PartialFn materialize() const {
        CellSet dom(cells);
        std::vector<Value> table(cells, 0);
        for (std::uint32_t c = 0; c < cells; ++c) {
            if (assignment[c] >= 0) {
                dom.set(c);
                table[c] = static_cast<Value>(assignment[c]);
            }
        }
        return PartialFn(k, arity, std::move(dom), std::move(table));
    }

    void leaf() {
        if (visit == nullptr && recheck.empty()) {
            ++visited;
            return;
        }
        PartialFn f = materialize();
        for (const Relation& rho : recheck)
            if (!preserves(f, rho)) return;
        ++visited;
        if (visit && !(*visit)(f)) stopped = true;
    }

    void descend(std::uint32_t pos) {
        if (pos == cells) {
            leaf();
            return;
        }
        const std::uint64_t* cur = slice(pos);
        std::uint64_t* next = slice(pos + 1);
        const bool pinned = pos == 0 && force_first != kNoForce;
        if (!total_only && (!pinned || force_first == -1)) {
            assignment[pos] = -1;
            std::copy(cur, cur + cells, next);
            descend(pos + 1);
            if (stopped) return;
        }
        std::uint64_t candidates = cur[pos];
        if (pinned) candidates &= force_first < 0 ? 0 : (std::uint64_t{1} << force_first);
        while (candidates) {
            const int v = std::countr_zero(candidates);
            candidates &= candidates - 1;
            assignment[pos] = static_cast<std::int16_t>(v);
            std::copy(cur, cur + cells, next);
            bool dead = false;
            for (const Edge& e : edges[pos]) {
                next[e.target] &= e.mask_by_value[v];
                if (total_only && next[e.target] == 0) {
                    dead = true;
                    break;
                }
            }
            if (!dead) descend(pos + 1);
            if (stopped) return;
        }
        assignment[pos] = -1;
    }
};

std::uint64_t run_search(int k, int n, const FnFilter& filter,
                         const std::function<bool(const PartialFn&)>* visit,
                         const EnumOptions& opts, int force_first = Search::kNoForce) {
    const std::uint32_t cells = cell_count(k, n);
    for (const Relation& rho : filter.preserve)
        require(rho.k() == k, "filter relation domain size mismatch");
    if (!filter.total_only && cells > kMaxPartialEnumCells && !opts.allow_large)
        throw resource_limit("partial enumeration over " + std::to_string(cells) +
                             " cells exceeds the default bound of " +
                             std::to_string(kMaxPartialEnumCells) + " (override to proceed)");
    if (cells > kMaxTotalEnumCells)
        throw resource_limit("enumeration over " + std::to_string(cells) +
                             " cells is not supported");

    Search s;
    s.k = k;
    s.arity = n;
    s.cells = cells;
    s.total_only = filter.total_only;
    s.force_first = force_first;
    s.visit = visit;
    s.assignment.assign(cells, -1);
    const std::uint64_t all_values = (k == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    s.allowed.assign(std::size_t(cells + 1) * cells, all_values);
    s.edges.resize(cells);

    // mask tables referenced by edges; one succ + one pred table per binary relation
    std::vector<std::vector<std::uint64_t>> tables;
    tables.reserve(2 * filter.preserve.size());
    std::uint64_t* init = s.slice(0);

    std::vector<std::vector<Value>> pts(cells);
    for (std::uint32_t c = 0; c < cells; ++c) pts[c] = decode_point(k, n, c);

    for (const Relation& rho : filter.preserve) {
        if (rho.arity() == 1) {
            // cells whose coordinates all lie in rho must map into rho
            std::uint64_t in_rho = 0;
            for (int v = 0; v < k; ++v) {
                const Value t[1] = {static_cast<Value>(v)};
                if (rho.contains(t)) in_rho |= std::uint64_t{1} << v;
            }
            for (std::uint32_t c = 0; c < cells; ++c) {
                bool all_in = true;
                for (Value d : pts[c]) all_in = all_in && ((in_rho >> d) & 1);
                if (all_in) init[c] &= in_rho;
            }
        } else if (rho.arity() == 2) {
            auto& succ = tables.emplace_back(static_cast<std::size_t>(k), 0);
            auto& pred = tables.emplace_back(static_cast<std::size_t>(k), 0);
            std::uint64_t diag = 0;
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) {
                    const Value t[2] = {static_cast<Value>(a), static_cast<Value>(b)};
                    if (rho.contains(t)) {
                        succ[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
                        pred[static_cast<std::size_t>(b)] |= std::uint64_t{1} << a;
                        if (a == b) diag |= std::uint64_t{1} << a;
                    }
                }
            auto ptwise = [&](std::uint32_t a, std::uint32_t b) {
                for (int i = 0; i < n; ++i) {
                    const Value t[2] = {pts[a][std::size_t(i)], pts[b][std::size_t(i)]};
                    if (!rho.contains(t)) return false;
                }
                return true;
            };
            for (std::uint32_t c = 0; c < cells; ++c) {
                if (ptwise(c, c)) init[c] &= diag;
                for (std::uint32_t d = c + 1; d < cells; ++d) {
                    if (ptwise(c, d)) s.edges[c].push_back({d, succ.data()});
                    if (ptwise(d, c)) s.edges[c].push_back({d, pred.data()});
                }
            }
        } else {
            s.recheck.push_back(rho);
        }
    }
    s.descend(0);
    return s.visited;
}

}  // namespace

std::uint64_t for_each_fn(int k, int n, const FnFilter& filter,
                          const std::function<bool(const PartialFn&)>& visit,
                          const EnumOptions& opts) {
    return run_search(k, n, filter, &visit, opts);
}

std::vector<PartialFn> enumerate_fns(int k, int n, const FnFilter& filter,
                                     const EnumOptions& opts) {
    std::vector<PartialFn> out;
    for_each_fn(
        k, n, filter,
        [&](const PartialFn& f) {
            out.push_back(f);
            return true;
        },
        opts);
    return out;
}

int env_worker_count() {
    const char* s = std::getenv("PARCLONE_THREADS");
    if (!s) return 1;
    const int v = std::atoi(s);
    return std::clamp(v, 1, 64);
}

std::uint64_t count_fns(int k, int n, const FnFilter& filter, const EnumOptions& opts) {
    const int threads = opts.threads > 0 ? opts.threads : env_worker_count();
    if (threads <= 1) return run_search(k, n, filter, nullptr, opts);

    // split on the first cell's branch; each worker's subtree is independent
    std::vector<int> branches;
    if (!filter.total_only) branches.push_back(-1);
    for (int v = 0; v < k; ++v) branches.push_back(v);

    std::vector<std::uint64_t> counts(branches.size(), 0);
    std::vector<std::exception_ptr> errors(branches.size());
    std::vector<std::thread> pool;
    const auto nw = static_cast<std::size_t>(std::min<int>(threads, int(branches.size())));
    for (std::size_t w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t b = w; b < branches.size(); b += nw) {
                try {
                    counts[b] = run_search(k, n, filter, nullptr, opts, branches[b]);
                } catch (...) {
                    errors[b] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    std::uint64_t total = 0;
    for (std::size_t b = 0; b < branches.size(); ++b) {
        if (errors[b]) std::rethrow_exception(errors[b]);
        total += counts[b];
    }
    return total;
}

}  // namespace parclone
