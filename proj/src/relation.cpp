#include "parclone/relation.hpp"

#include <algorithm>
#include <charconv>

namespace parclone {

Relation::Relation(int k, int h, std::vector<std::vector<Value>> tuples)
    : k_(k), h_(h), tuples_(std::move(tuples)), member_(cell_count(k, h)) {
    for (const auto& t : tuples_) {
        require(static_cast<int>(t.size()) == h_, "relation tuple length does not match arity");
        member_.set(encode_point(k_, t));  // validates entries < k
    }
    std::sort(tuples_.begin(), tuples_.end());
    require(std::adjacent_find(tuples_.begin(), tuples_.end()) == tuples_.end(),
            "duplicate tuple in relation");
}

bool Relation::contains(std::span<const Value> tuple) const {
    require(static_cast<int>(tuple.size()) == h_, "tuple length does not match relation arity");
    return member_.test(encode_point(k_, tuple));
}

bool preserves(const PartialFn& f, const Relation& rho) {
    require(f.k() == rho.k(), "function and relation domain size mismatch");
    const int n = f.arity();
    const int h = rho.arity();
    const std::size_t r = rho.size();
    if (r == 0) return true;
    require(pow_sat(r, static_cast<std::uint64_t>(n)) <= (std::uint64_t{1} << 30),
            "preservation check too large: |rho|^n exceeds the matrix budget");

    const int k = f.k();
    // row_place[j] = k^(n-1-j), the positional weight of column j in a row index
    std::vector<std::uint32_t> row_place(static_cast<std::size_t>(n), 1);
    for (int j = n - 2; j >= 0; --j)
        row_place[static_cast<std::size_t>(j)] = row_place[static_cast<std::size_t>(j + 1)] * static_cast<std::uint32_t>(k);

    std::vector<std::size_t> cols(static_cast<std::size_t>(n), 0);  // odometer over rho indices
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(h));
    std::vector<Value> image(static_cast<std::size_t>(h));
    for (;;) {
        for (int i = 0; i < h; ++i) {
            std::uint32_t idx = 0;
            for (int j = 0; j < n; ++j)
                idx += rho.tuples()[cols[static_cast<std::size_t>(j)]][static_cast<std::size_t>(i)] *
                       row_place[static_cast<std::size_t>(j)];
            rows[static_cast<std::size_t>(i)] = idx;
        }
        bool in_dom = true;
        for (int i = 0; i < h; ++i)
            if (!f.defined(rows[static_cast<std::size_t>(i)])) {
                in_dom = false;
                break;
            }
        if (in_dom) {
            for (int i = 0; i < h; ++i)
                image[static_cast<std::size_t>(i)] = f.table()[rows[static_cast<std::size_t>(i)]];
            if (!rho.contains(image)) return false;
        }
        // next column choice
        int j = n - 1;
        while (j >= 0 && ++cols[static_cast<std::size_t>(j)] == r) {
            cols[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
    }
    return true;
}

Permutation::Permutation(int k, std::vector<Value> mapping) : k_(k), map_(std::move(mapping)) {
    check_domain(k_);
    require(static_cast<int>(map_.size()) == k_, "permutation mapping must have k entries");
    std::vector<bool> seen(static_cast<std::size_t>(k_), false);
    for (Value v : map_) {
        require(v < k_, "permutation value out of range");
        require(!seen[v], "permutation mapping is not a bijection");
        seen[v] = true;
    }
}

namespace {
bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}
}  // namespace

Permutation Permutation::uniform_cycles(int k, int p) {
    check_domain(k);
    require(is_prime(p), "cycle length must be prime, got " + std::to_string(p));
    require(k % p == 0, "cycle length must divide k");
    std::vector<Value> map(static_cast<std::size_t>(k));
    for (int b = 0; b < k; b += p)
        for (int i = 0; i < p; ++i)
            map[static_cast<std::size_t>(b + i)] = static_cast<Value>(b + (i + 1) % p);
    return Permutation(k, std::move(map));
}

std::vector<std::vector<Value>> Permutation::cycles() const {
    std::vector<std::vector<Value>> out;
    std::vector<bool> seen(static_cast<std::size_t>(k_), false);
    for (int s = 0; s < k_; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<Value> cyc;
        Value x = static_cast<Value>(s);
        do {
            cyc.push_back(x);
            seen[x] = true;
            x = map_[x];
        } while (x != s);
        out.push_back(std::move(cyc));
    }
    return out;
}

bool Permutation::fixed_point_free() const {
    for (int x = 0; x < k_; ++x)
        if (map_[static_cast<std::size_t>(x)] == x) return false;
    return true;
}

std::optional<int> Permutation::uniform_cycle_length() const {
    auto cs = cycles();
    const std::size_t p = cs.front().size();
    for (const auto& c : cs)
        if (c.size() != p) return std::nullopt;
    return static_cast<int>(p);
}

Relation graph_relation(const Permutation& pi) {
    std::vector<std::vector<Value>> tuples;
    for (int x = 0; x < pi.k(); ++x)
        tuples.push_back({static_cast<Value>(x), pi.apply(static_cast<Value>(x))});
    return Relation(pi.k(), 2, std::move(tuples));
}

Relation orbit_relation(const Permutation& pi) {
    require(pi.fixed_point_free(), "orbit relation needs a fixed-point-free permutation");
    auto p = pi.uniform_cycle_length();
    require(p.has_value(), "orbit relation needs uniform cycle length");
    std::vector<std::vector<Value>> tuples;
    for (int x = 0; x < pi.k(); ++x) {
        std::vector<Value> t;
        Value y = static_cast<Value>(x);
        for (int i = 0; i < *p; ++i) {
            t.push_back(y);
            y = pi.apply(y);
        }
        tuples.push_back(std::move(t));
    }
    return Relation(pi.k(), *p, std::move(tuples));
}

namespace builtins {

Relation leq2() { return chain(2); }

Relation neq2() { return Relation(2, 2, {{0, 1}, {1, 0}}); }

Relation chain(int k) {
    check_domain(k);
    std::vector<std::vector<Value>> tuples;
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b)
            tuples.push_back({static_cast<Value>(a), static_cast<Value>(b)});
    return Relation(k, 2, std::move(tuples));
}

Relation singleton(int k, int a) {
    check_domain(k);
    require(a >= 0 && a < k, "singleton element out of range");
    return Relation(k, 1, {{static_cast<Value>(a)}});
}

const std::vector<std::pair<int, int>>& tardos8_covers() {
    static const std::vector<std::pair<int, int>> covers = {
        {0, 4}, {0, 7}, {4, 3}, {3, 2}, {2, 1}, {7, 6},
        {6, 5}, {5, 1}, {4, 6}, {3, 5}, {7, 3}, {6, 2},
    };
    return covers;
}

Relation tardos8() {
    constexpr int k = 8;
    bool leq[k][k] = {};
    for (int x = 0; x < k; ++x) leq[x][x] = true;
    for (auto [a, b] : tardos8_covers()) leq[a][b] = true;
    for (int m = 0; m < k; ++m)
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                if (leq[a][m] && leq[m][b]) leq[a][b] = true;
    std::vector<std::vector<Value>> tuples;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (leq[a][b]) tuples.push_back({static_cast<Value>(a), static_cast<Value>(b)});
    return Relation(k, 2, std::move(tuples));
}

namespace {
// Parses "name(a)" or "name(a,b)"; returns args or nullopt when `s` is not of
// that shape for `fn`.
std::optional<std::vector<int>> parse_call(std::string_view s, std::string_view fn) {
    if (s.size() < fn.size() + 3 || s.substr(0, fn.size()) != fn || s[fn.size()] != '(' ||
        s.back() != ')')
        return std::nullopt;
    std::string_view inner = s.substr(fn.size() + 1, s.size() - fn.size() - 2);
    std::vector<int> args;
    std::size_t pos = 0;
    while (pos <= inner.size()) {
        std::size_t comma = inner.find(',', pos);
        std::string_view tok = inner.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
        int v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || p != tok.data() + tok.size()) return std::nullopt;
        args.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return args;
}
}  // namespace

Relation by_name(std::string_view name) {
    if (name == "leq2") return leq2();
    if (name == "neq2") return neq2();
    if (name == "tardos8") return tardos8();
    if (auto a = parse_call(name, "chain"); a && a->size() == 1) return chain((*a)[0]);
    if (auto a = parse_call(name, "singleton"); a && a->size() == 2) return singleton((*a)[0], (*a)[1]);
    if (auto a = parse_call(name, "graph"); a && a->size() == 2)
        return graph_relation(Permutation::uniform_cycles((*a)[0], (*a)[1]));
    if (auto a = parse_call(name, "orbit"); a && a->size() == 2)
        return orbit_relation(Permutation::uniform_cycles((*a)[0], (*a)[1]));
    throw invalid_input("unknown relation name: " + std::string(name));
}

std::vector<std::string> names() {
    return {"leq2", "neq2", "tardos8", "chain(<k>)", "singleton(<k>,<a>)", "graph(<k>,<p>)",
            "orbit(<k>,<p>)"};
}

}  // namespace builtins

bool is_order(const Relation& rho) {
    require(rho.arity() == 2, "order test needs a binary relation");
    const int k = rho.k();
    auto leq = [&](int a, int b) {
        const Value t[2] = {static_cast<Value>(a), static_cast<Value>(b)};
        return rho.contains(t);
    };
    for (int a = 0; a < k; ++a)
        if (!leq(a, a)) return false;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            if (a != b && leq(a, b) && leq(b, a)) return false;
            for (int c = 0; c < k; ++c)
                if (leq(a, b) && leq(b, c) && !leq(a, c)) return false;
        }
    return true;
}

bool is_bounded_order(const Relation& rho) {
    if (!is_order(rho)) return false;
    const int k = rho.k();
    auto leq = [&](int a, int b) {
        const Value t[2] = {static_cast<Value>(a), static_cast<Value>(b)};
        return rho.contains(t);
    };
    bool has_least = false, has_greatest = false;
    for (int a = 0; a < k && !(has_least && has_greatest); ++a) {
        bool least = true, greatest = true;
        for (int b = 0; b < k; ++b) {
            least = least && leq(a, b);
            greatest = greatest && leq(b, a);
        }
        has_least = has_least || least;
        has_greatest = has_greatest || greatest;
    }
    return has_least && has_greatest;
}

}  // namespace parclone
