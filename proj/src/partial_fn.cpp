#include "parclone/partial_fn.hpp"

#include <algorithm>

namespace parclone {

PartialFn::PartialFn(int k, int n)
    : k_(k), n_(n), cells_(cell_count(k, n)), dom_(cells_), table_(cells_, 0) {}

PartialFn::PartialFn(int k, int n, CellSet dom, std::vector<Value> table)
    : k_(k), n_(n), cells_(cell_count(k, n)), dom_(std::move(dom)), table_(std::move(table)) {
    require(dom_.size() == cells_, "domain mask size does not match k^n");
    require(table_.size() == cells_, "value table size does not match k^n");
    for (std::uint32_t c = 0; c < cells_; ++c) {
        if (dom_.test(c)) {
            require(table_[c] < k_, "stored value out of range");
        } else {
            table_[c] = 0;  // normalize
        }
    }
}

PartialFn PartialFn::projection(int k, int n, int i) {
    const std::uint32_t cells = cell_count(k, n);
    require(i >= 1 && i <= n, "projection index " + std::to_string(i) + " out of range for arity " +
                                  std::to_string(n));
    std::vector<Value> table(cells);
    // coordinate i is digit i (big-endian): strip the i..n suffix, take mod k
    std::uint32_t suffix = 1;
    for (int j = 0; j < n - i; ++j) suffix *= static_cast<std::uint32_t>(k);
    for (std::uint32_t c = 0; c < cells; ++c)
        table[c] = static_cast<Value>((c / suffix) % static_cast<std::uint32_t>(k));
    return PartialFn(k, n, CellSet::full(cells), std::move(table));
}

PartialFn PartialFn::total(int k, int n, std::vector<Value> values) {
    const std::uint32_t cells = cell_count(k, n);
    require(values.size() == cells, "total function needs k^n values");
    return PartialFn(k, n, CellSet::full(cells), std::move(values));
}

PartialFn PartialFn::from_points(int k, int n,
                                 const std::vector<std::pair<std::vector<Value>, Value>>& cells) {
    PartialFn f(k, n);
    for (const auto& [coords, v] : cells) {
        require(static_cast<int>(coords.size()) == n, "coordinate count does not match arity");
        require(v < k, "value out of range");
        const std::uint32_t c = encode_point(k, coords);
        require(!f.dom_.test(c), "duplicate cell in point list");
        f.dom_.set(c);
        f.table_[c] = v;
    }
    return f;
}

Value PartialFn::value_at(std::uint32_t cell) const {
    require(cell < cells_, "cell index out of range");
    require(dom_.test(cell), "function undefined at cell " + std::to_string(cell));
    return table_[cell];
}

std::optional<Value> PartialFn::eval(std::span<const Value> args) const {
    require(static_cast<int>(args.size()) == n_, "argument count does not match arity");
    const std::uint32_t c = encode_point(k_, args);
    if (!dom_.test(c)) return std::nullopt;
    return table_[c];
}

PartialFn PartialFn::restrict_to(const CellSet& mask) const {
    require(mask.size() == cells_, "restriction mask size mismatch");
    require(mask.is_subset_of(dom_), "restriction mask is not a subset of the domain");
    std::vector<Value> table(cells_, 0);
    for (std::uint32_t c = 0; c < cells_; ++c)
        if (mask.test(c)) table[c] = table_[c];
    return PartialFn(k_, n_, mask, std::move(table));
}

PartialFn PartialFn::without_cell(std::uint32_t cell) const {
    require(cell < cells_ && dom_.test(cell), "cell to delete must be in the domain");
    PartialFn g = *this;
    g.dom_.reset(cell);
    g.table_[cell] = 0;
    return g;
}

bool PartialFn::is_subfunction_of(const PartialFn& f) const {
    require(k_ == f.k_ && n_ == f.n_, "subfunction test needs matching k and arity");
    if (!dom_.is_subset_of(f.dom_)) return false;
    for (std::uint32_t c = 0; c < cells_; ++c)
        if (dom_.test(c) && table_[c] != f.table_[c]) return false;
    return true;
}

std::string PartialFn::key() const {
    std::string s;
    s.reserve(2 + cells_);
    s.push_back(static_cast<char>(k_));
    s.push_back(static_cast<char>(n_));
    for (std::uint32_t c = 0; c < cells_; ++c)
        s.push_back(dom_.test(c) ? static_cast<char>(1 + table_[c]) : char{0});
    return s;
}

PartialFn compose(const PartialFn& f, std::span<const PartialFn> gs) {
    require(!gs.empty(), "composition needs at least one inner function");
    require(static_cast<int>(gs.size()) == f.arity(), "inner function count must equal outer arity");
    const int k = f.k();
    const int m = gs.front().arity();
    for (const PartialFn& g : gs) {
        require(g.k() == k, "inner function domain size mismatch");
        require(g.arity() == m, "inner functions must share one arity");
    }
    const std::uint32_t cells = gs.front().cells();
    const int n = f.arity();

    PartialFn h(k, m);
    CellSet dom(cells);
    std::vector<Value> table(cells, 0);
    for (std::uint32_t a = 0; a < cells; ++a) {
        std::uint32_t target = 0;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            const PartialFn& g = gs[static_cast<std::size_t>(i)];
            if (!g.defined(a)) {
                ok = false;
                break;
            }
            target = target * static_cast<std::uint32_t>(k) + g.table()[a];
        }
        if (ok && f.defined(target)) {
            dom.set(a);
            table[a] = f.table()[target];
        }
    }
    return PartialFn(k, m, std::move(dom), std::move(table));
}

bool keys_less(const PartialFn& a, const PartialFn& b) { return a.key() < b.key(); }

}  // namespace parclone
