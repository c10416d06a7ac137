#include "parclone/closure.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "parclone/text_io.hpp"

namespace parclone {

namespace {

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

void validate_config(const ClosureConfig& cfg) {
    require(cfg.target_arity >= 1 && cfg.target_arity <= cfg.intermediate_arity &&
                cfg.intermediate_arity <= kMaxArity,
            "closure config needs 1 <= target_arity <= intermediate_arity <= " +
                std::to_string(kMaxArity));
    require(cfg.max_size >= 1 && cfg.max_rounds >= 1, "closure caps must be positive");
}

PartialFn fn_from_key_bytes(int k, int n, const unsigned char* key) {
    const std::uint32_t cells = cell_count(k, n);
    CellSet dom(cells);
    std::vector<Value> table(cells, 0);
    for (std::uint32_t c = 0; c < cells; ++c) {
        const unsigned char b = key[2 + c];
        if (b) {
            dom.set(c);
            table[c] = static_cast<Value>(b - 1);
        }
    }
    return PartialFn(k, n, std::move(dom), std::move(table));
}

// Insert-only hash index over fixed-width byte items stored in one arena;
// open addressing, ids in insertion order. This is the dedup hot path of the
// closure fixpoint, hit once per composition attempt.
struct FlatIndex {
    std::size_t width = 0;
    std::vector<unsigned char> arena;
    std::vector<std::uint32_t> slots;  // 0 = empty, else id + 1
    std::size_t count = 0;
    std::size_t mask = 0;

    void init(std::size_t w) {
        width = w;
        slots.assign(1024, 0);
        mask = slots.size() - 1;
    }

    const unsigned char* item(std::uint32_t id) const {
        return arena.data() + std::size_t(id) * width;
    }

    static std::uint64_t hash_bytes(const unsigned char* p, std::size_t len) {
        std::uint64_t h = fnv1a64(p, len);
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdull;
        h ^= h >> 33;
        return h;
    }

    void grow() {
        std::vector<std::uint32_t> bigger(slots.size() * 2, 0);
        const std::size_t nmask = bigger.size() - 1;
        for (std::size_t id = 0; id < count; ++id) {
            std::size_t s = hash_bytes(item(static_cast<std::uint32_t>(id)), width) & nmask;
            while (bigger[s]) s = (s + 1) & nmask;
            bigger[s] = static_cast<std::uint32_t>(id) + 1;
        }
        slots.swap(bigger);
        mask = nmask;
    }

    // true when the item was new
    bool insert(const unsigned char* p) {
        if ((count + 1) * 5 > slots.size() * 3) grow();
        std::size_t s = hash_bytes(p, width) & mask;
        for (;;) {
            const std::uint32_t v = slots[s];
            if (v == 0) {
                arena.insert(arena.end(), p, p + width);
                slots[s] = static_cast<std::uint32_t>(count) + 1;
                ++count;
                return true;
            }
            if (std::memcmp(item(v - 1), p, width) == 0) return false;
            s = (s + 1) & mask;
        }
    }
};

struct Engine {
    int k;
    ClosureConfig cfg;
    int inter;
    std::uint64_t tupling_budget;

    std::vector<FlatIndex> members;           // [m]: canonical key bytes
    std::vector<std::vector<PartialFn>> fns;  // [m]: parallel, insertion order
    std::uint64_t total_fns = 0;
    std::deque<std::pair<int, std::uint32_t>> pending_delete;

    // Tuplings (g_1,...,g_j) of j functions of arity m, as joint partial maps:
    // per source cell the image cell in the k^j grid as int32, or -1 when some
    // g_i is undefined; g_1 is the most significant digit, matching compose.
    struct TupleSet {
        FlatIndex idx;
        std::uint32_t cells = 0;
        std::size_t mark_a = 0;  // processed prefix of the producing set
        std::size_t mark_b = 0;  // processed prefix of the member list
    };
    std::vector<std::vector<TupleSet>> tsets;  // [m][j]

    struct CrossMark {
        std::size_t outer = 0, tup = 0;
    };
    std::vector<std::vector<CrossMark>> cross;  // [n][m]

    ClosureStats stats;
    std::string limit;

    Engine(int k_in, const ClosureConfig& cfg_in)
        : k(k_in), cfg(cfg_in), inter(cfg_in.intermediate_arity) {
        tupling_budget = std::max<std::uint64_t>(
            1'000'000, std::min<std::uint64_t>(4 * cfg.max_size, 16'000'000));
        members.resize(static_cast<std::size_t>(inter) + 1);
        fns.resize(static_cast<std::size_t>(inter) + 1);
        tsets.resize(static_cast<std::size_t>(inter) + 1);
        cross.resize(static_cast<std::size_t>(inter) + 1);
        for (int m = 1; m <= inter; ++m) {
            const std::uint32_t cells = cell_count(k, m);
            members[m].init(2 + std::size_t{cells});
            tsets[m].resize(static_cast<std::size_t>(inter) + 1);
            for (int j = 1; j <= inter; ++j) {
                tsets[m][j].cells = cells;
                tsets[m][j].idx.init(std::size_t{cells} * sizeof(std::int32_t));
            }
            cross[m].resize(static_cast<std::size_t>(inter) + 1);
        }
    }

    bool stopped() const { return !limit.empty(); }

    bool insert_key_bytes(int m, const unsigned char* kb) {
        if (!members[m].insert(kb)) return false;
        fns[m].push_back(fn_from_key_bytes(k, m, kb));
        ++total_fns;
        ++stats.inserts;
        if (cfg.strong)
            pending_delete.emplace_back(m, static_cast<std::uint32_t>(fns[m].size() - 1));
        if (total_fns > cfg.max_size) limit = "max_size";
        return true;
    }

    bool insert_fn(const PartialFn& f) {
        const std::string key = f.key();
        return insert_key_bytes(f.arity(), reinterpret_cast<const unsigned char*>(key.data()));
    }

    bool drain_deletions() {
        bool progress = false;
        std::vector<unsigned char> parent;
        while (!pending_delete.empty() && !stopped()) {
            const auto [m, id] = pending_delete.front();
            pending_delete.pop_front();
            const std::size_t width = members[m].width;
            parent.assign(members[m].item(id), members[m].item(id) + width);
            for (std::size_t c = 2; c < width && !stopped(); ++c) {
                const unsigned char b = parent[c];
                if (b == 0) continue;
                parent[c] = 0;
                progress = insert_key_bytes(m, parent.data()) || progress;
                parent[c] = b;
            }
        }
        return progress;
    }

    void note_tupling() {
        ++stats.tuplings_built;
        if (stats.tuplings_built > tupling_budget) limit = "tupling_budget";
    }

    void extend_t1(int m) {
        TupleSet& t1 = tsets[m][1];
        std::vector<std::int32_t> t(t1.cells);
        for (std::size_t i = t1.mark_a; i < fns[m].size() && !stopped(); ++i) {
            const PartialFn& g = fns[m][i];
            for (std::uint32_t a = 0; a < t1.cells; ++a)
                t[a] = g.defined(a) ? std::int32_t(g.table()[a]) : -1;
            if (t1.idx.insert(reinterpret_cast<const unsigned char*>(t.data()))) note_tupling();
        }
        if (!stopped()) t1.mark_a = fns[m].size();
    }

    void extend_tj(int m, int j) {
        TupleSet& prev = tsets[m][j - 1];
        TupleSet& cur = tsets[m][j];
        const std::size_t np = prev.idx.count;
        const std::size_t ns = fns[m].size();
        std::vector<std::int32_t> t(cur.cells);
        auto combine = [&](std::uint32_t pid, std::size_t si) {
            const auto* pt = reinterpret_cast<const std::int32_t*>(prev.idx.item(pid));
            const PartialFn& g = fns[m][si];
            for (std::uint32_t a = 0; a < cur.cells; ++a)
                t[a] = (pt[a] >= 0 && g.defined(a)) ? pt[a] * k + g.table()[a] : -1;
            if (cur.idx.insert(reinterpret_cast<const unsigned char*>(t.data()))) note_tupling();
        };
        for (std::size_t p = cur.mark_a; p < np && !stopped(); ++p)
            for (std::size_t s = 0; s < ns && !stopped(); ++s)
                combine(static_cast<std::uint32_t>(p), s);
        for (std::size_t p = 0; p < cur.mark_a && !stopped(); ++p)
            for (std::size_t s = cur.mark_b; s < ns && !stopped(); ++s)
                combine(static_cast<std::uint32_t>(p), s);
        if (!stopped()) {
            cur.mark_a = np;
            cur.mark_b = ns;
        }
    }

    bool compose_cross(int n, int m) {
        TupleSet& ts = tsets[m][n];
        CrossMark& cm = cross[n][m];
        const std::size_t no = fns[n].size();
        const std::size_t nt = ts.idx.count;
        const std::uint32_t cells = ts.cells;
        bool progress = false;
        std::vector<unsigned char> key(2 + cells, 0);
        key[0] = static_cast<unsigned char>(k);
        key[1] = static_cast<unsigned char>(m);
        std::vector<unsigned char> outer_key(members[n].width);
        auto run_block = [&](std::size_t o_lo, std::size_t o_hi, std::size_t t_lo,
                             std::size_t t_hi) {
            for (std::size_t o = o_lo; o < o_hi && !stopped(); ++o) {
                // copy: inserts of arity-n results would invalidate the arena pointer
                std::memcpy(outer_key.data(), members[n].item(static_cast<std::uint32_t>(o)),
                            members[n].width);
                const unsigned char* fk = outer_key.data() + 2;
                for (std::size_t ti = t_lo; ti < t_hi && !stopped(); ++ti) {
                    ++stats.compositions_attempted;
                    const auto* tp =
                        reinterpret_cast<const std::int32_t*>(ts.idx.item(static_cast<std::uint32_t>(ti)));
                    for (std::uint32_t a = 0; a < cells; ++a) {
                        const std::int32_t tgt = tp[a];
                        key[2 + a] = tgt >= 0 ? fk[tgt] : 0;
                    }
                    progress = insert_key_bytes(m, key.data()) || progress;
                }
            }
        };
        run_block(cm.outer, no, 0, nt);
        run_block(0, cm.outer, cm.tup, nt);
        if (!stopped()) {
            cm.outer = no;
            cm.tup = nt;
        }
        return progress;
    }

    void run() {
        for (int round = 1; round <= cfg.max_rounds && !stopped(); ++round) {
            stats.rounds = round;
            bool progress = drain_deletions();
            for (int m = 1; m <= inter && !stopped(); ++m) {
                extend_t1(m);
                for (int j = 2; j <= inter && !stopped(); ++j) extend_tj(m, j);
            }
            for (int n = 1; n <= inter && !stopped(); ++n)
                for (int m = 1; m <= inter && !stopped(); ++m)
                    progress = compose_cross(n, m) || progress;
            progress = drain_deletions() || progress;
            if (!progress) break;
            if (round == cfg.max_rounds) limit = "max_rounds";
        }
    }
};

}  // namespace

ClosureResult::ClosureResult(int k, ClosureConfig config, bool saturated, ClosureStats stats,
                             std::vector<PartialFn> functions, std::vector<PartialFn> intermediates)
    : k_(k),
      config_(config),
      saturated_(saturated),
      stats_(std::move(stats)),
      functions_(std::move(functions)),
      intermediates_(std::move(intermediates)) {}

bool ClosureResult::contains(const PartialFn& f) const {
    require(f.arity() <= config_.target_arity,
            "membership query arity exceeds the closure target arity");
    require(f.k() == k_, "membership query domain size mismatch");
    const std::string key = f.key();
    auto it = std::lower_bound(
        functions_.begin(), functions_.end(), key,
        [](const PartialFn& g, const std::string& kk) { return g.key() < kk; });
    return it != functions_.end() && it->key() == key;
}

ClosureResult generate(int k, std::span<const PartialFn> generators, const ClosureConfig& config) {
    check_domain(k);
    validate_config(config);
    cell_count(k, config.intermediate_arity);  // structural bound
    for (const PartialFn& g : generators) {
        require(g.k() == k, "generator domain size mismatch");
        require(g.arity() <= config.intermediate_arity,
                "generator arity exceeds intermediate_arity");
    }
    Engine e(k, config);
    for (int n = 1; n <= config.intermediate_arity && !e.stopped(); ++n)
        for (int i = 1; i <= n && !e.stopped(); ++i) e.insert_fn(PartialFn::projection(k, n, i));
    for (const PartialFn& g : generators) {
        if (e.stopped()) break;
        e.insert_fn(g);
    }
    e.run();

    std::vector<PartialFn> reported;
    std::vector<PartialFn> intermediates;
    for (int m = 1; m <= config.intermediate_arity; ++m)
        for (PartialFn& f : e.fns[m])
            (m <= config.target_arity ? reported : intermediates).push_back(std::move(f));
    std::sort(reported.begin(), reported.end(), keys_less);
    std::sort(intermediates.begin(), intermediates.end(), keys_less);
    ClosureStats stats = e.stats;
    stats.limit_hit = e.limit;
    return ClosureResult(k, config, e.limit.empty(), std::move(stats), std::move(reported),
                         std::move(intermediates));
}

std::vector<PartialFn> total_part(std::span<const PartialFn> fns) {
    std::vector<PartialFn> out;
    for (const PartialFn& f : fns)
        if (f.is_total()) out.push_back(f);
    return out;
}

ClosureResult projection_subfunctions(int k, int target_arity) {
    check_domain(k);
    require(target_arity >= 1 && target_arity <= kMaxArity, "target arity out of range");
    const std::uint32_t top_cells = cell_count(k, target_arity);
    if (top_cells > 16)
        throw resource_limit("projection subfunctions need k^target <= 16 cells, got " +
                             std::to_string(top_cells));
    std::unordered_set<std::string> seen;
    std::vector<PartialFn> out;
    ClosureStats stats;
    for (int n = 1; n <= target_arity; ++n) {
        const std::uint32_t cells = cell_count(k, n);
        for (int i = 1; i <= n; ++i) {
            const PartialFn proj = PartialFn::projection(k, n, i);
            std::string key(2 + cells, char{0});
            key[0] = static_cast<char>(k);
            key[1] = static_cast<char>(n);
            for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << cells); ++mask) {
                for (std::uint32_t c = 0; c < cells; ++c)
                    key[2 + c] = (mask >> c) & 1 ? static_cast<char>(1 + proj.table()[c]) : char{0};
                if (seen.insert(key).second) {
                    out.push_back(fn_from_key_bytes(k, n, reinterpret_cast<const unsigned char*>(key.data())));
                    ++stats.inserts;
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), keys_less);
    ClosureConfig cfg;
    cfg.target_arity = target_arity;
    cfg.intermediate_arity = target_arity;
    cfg.strong = true;
    stats.rounds = 1;
    return ClosureResult(k, cfg, true, std::move(stats), std::move(out), {});
}

FragmentReport fragment_equal(const ClosureResult& result, const FnFilter& filter, int n) {
    require(n >= 1 && n <= result.config().target_arity,
            "fragment arity exceeds the closure target arity");
    std::vector<const PartialFn*> frag;
    for (const PartialFn& f : result.functions())
        if (f.arity() == n) frag.push_back(&f);

    FragmentReport rep;
    rep.result_size = frag.size();
    std::size_t idx = 0;
    bool decided = false;
    for_each_fn(result.k(), n, filter, [&](const PartialFn& f) {
        ++rep.fragment_size;
        const std::string fk = f.key();
        if (idx < frag.size() && frag[idx]->key() < fk) {
            rep.outcome = FragmentOutcome::extra_witness;
            rep.witness = *frag[idx];
            decided = true;
            return false;
        }
        if (idx < frag.size() && frag[idx]->key() == fk) {
            ++idx;
            return true;
        }
        rep.outcome = FragmentOutcome::missing_witness;
        rep.witness = f;
        decided = true;
        return false;
    });
    if (!decided) {
        if (idx < frag.size()) {
            rep.outcome = FragmentOutcome::extra_witness;
            rep.witness = *frag[idx];
        } else {
            rep.outcome = FragmentOutcome::equal;
        }
    }
    return rep;
}

namespace {

std::uint64_t closure_digest(const ClosureResult& r) {
    std::string all;
    for (const PartialFn& f : r.functions()) all += f.key();
    for (const PartialFn& f : r.intermediates()) all += f.key();
    return fnv1a64(all.data(), all.size());
}

}  // namespace

std::string format_closure(const ClosureResult& r) {
    std::ostringstream out;
    char digest[17];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(closure_digest(r)));
    const ClosureStats& st = r.stats();
    out << "pclone-cache v1 k=" << r.k() << " target=" << r.config().target_arity
        << " intermediate=" << r.config().intermediate_arity << " strong=" << int(r.config().strong)
        << " max_size=" << r.config().max_size << " max_rounds=" << r.config().max_rounds
        << " saturated=" << int(r.saturated()) << " rounds=" << st.rounds
        << " compositions=" << st.compositions_attempted << " inserts=" << st.inserts
        << " tuplings=" << st.tuplings_built
        << " limit=" << (st.limit_hit.empty() ? "none" : st.limit_hit)
        << " count=" << (r.functions().size() + r.intermediates().size()) << " digest=" << digest
        << "\n\n";
    std::vector<PartialFn> all = r.functions();
    all.insert(all.end(), r.intermediates().begin(), r.intermediates().end());
    out << format_pfn_blocks(all);
    return out.str();
}

ClosureResult parse_closure(std::string_view text) {
    const std::size_t eol = text.find('\n');
    if (eol == std::string_view::npos) throw corrupt_cache("cache file has no header line");
    std::istringstream head{std::string(text.substr(0, eol))};
    std::string magic, ver;
    head >> magic >> ver;
    if (magic != "pclone-cache" || ver != "v1") throw corrupt_cache("cache header magic mismatch");
    std::unordered_map<std::string, std::string> fields;
    std::string tok;
    while (head >> tok) {
        const std::size_t eq = tok.find('=');
        if (eq == std::string::npos) throw corrupt_cache("malformed cache header field: " + tok);
        fields[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    auto get = [&](const std::string& name) {
        auto it = fields.find(name);
        if (it == fields.end()) throw corrupt_cache("cache header missing field: " + name);
        return it->second;
    };
    ClosureConfig cfg;
    ClosureStats stats;
    int k = 0, saturated = 0;
    std::uint64_t count = 0, digest = 0;
    try {
        k = std::stoi(get("k"));
        cfg.target_arity = std::stoi(get("target"));
        cfg.intermediate_arity = std::stoi(get("intermediate"));
        cfg.strong = std::stoi(get("strong")) != 0;
        cfg.max_size = std::stoull(get("max_size"));
        cfg.max_rounds = std::stoi(get("max_rounds"));
        saturated = std::stoi(get("saturated"));
        stats.rounds = std::stoi(get("rounds"));
        stats.compositions_attempted = std::stoull(get("compositions"));
        stats.inserts = std::stoull(get("inserts"));
        stats.tuplings_built = std::stoull(get("tuplings"));
        stats.limit_hit = get("limit") == "none" ? "" : get("limit");
        count = std::stoull(get("count"));
        digest = std::stoull(get("digest"), nullptr, 16);
    } catch (const corrupt_cache&) {
        throw;
    } catch (const std::exception& e) {
        throw corrupt_cache(std::string("malformed cache header: ") + e.what());
    }

    std::vector<PartialFn> all;
    try {
        all = parse_pfn_blocks(text.substr(eol + 1));
    } catch (const invalid_input& e) {
        throw corrupt_cache(std::string("cache body malformed: ") + e.what());
    }
    if (all.size() != count)
        throw corrupt_cache("cache body has " + std::to_string(all.size()) +
                            " functions, header says " + std::to_string(count));
    std::vector<PartialFn> reported, intermediates;
    for (PartialFn& f : all) {
        if (f.k() != k) throw corrupt_cache("cache body domain size mismatch");
        if (f.arity() > cfg.intermediate_arity)
            throw corrupt_cache("cache body arity exceeds intermediate_arity");
        (f.arity() <= cfg.target_arity ? reported : intermediates).push_back(std::move(f));
    }
    std::sort(reported.begin(), reported.end(), keys_less);
    std::sort(intermediates.begin(), intermediates.end(), keys_less);
    ClosureResult r(k, cfg, saturated != 0, std::move(stats), std::move(reported),
                    std::move(intermediates));
    if (closure_digest(r) != digest) throw corrupt_cache("cache digest mismatch");
    return r;
}

void save_closure(const std::string& path, const ClosureResult& result) {
    std::ofstream out(path);
    require(out.good(), "cannot write file: " + path);
    out << format_closure(result);
}

ClosureResult load_closure(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_closure(buf.str());
}

}  // namespace parclone
