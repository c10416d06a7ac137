#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parclone/base.hpp"

namespace parclone {

// A k-valued partial function of arity n, stored as a defined-cell mask over
// the k^n cell grid plus a value table. The table is normalized: undefined
// cells always hold 0, so (k, n, dom, table) equality is extensional and no
// stale value can distinguish two equal functions.
class PartialFn {
  public:
    // Empty-domain function.
    PartialFn(int k, int n);
    PartialFn(int k, int n, CellSet dom, std::vector<Value> table);

    static PartialFn projection(int k, int n, int i);  // i is 1-based
    static PartialFn total(int k, int n, std::vector<Value> values);
    static PartialFn from_points(int k, int n,
                                 const std::vector<std::pair<std::vector<Value>, Value>>& cells);

    int k() const { return k_; }
    int arity() const { return n_; }
    std::uint32_t cells() const { return cells_; }

    bool defined(std::uint32_t cell) const { return dom_.test(cell); }
    Value value_at(std::uint32_t cell) const;
    std::optional<Value> eval(std::span<const Value> args) const;

    const CellSet& dom() const { return dom_; }
    // Normalized full table; entries at undefined cells are 0 and meaningless.
    const std::vector<Value>& table() const { return table_; }

    std::uint32_t defined_count() const { return dom_.count(); }
    bool is_total() const { return dom_.all(); }
    bool empty_domain() const { return dom_.none(); }

    PartialFn restrict_to(const CellSet& mask) const;
    PartialFn without_cell(std::uint32_t cell) const;

    bool is_subfunction_of(const PartialFn& f) const;

    // Byte sequence uniquely determined by (k, n, dom, table); lexicographic
    // order of keys matches the enumeration order (undefined < 0 < 1 < ...,
    // cells scanned in ascending index order).
    std::string key() const;

    friend bool operator==(const PartialFn&, const PartialFn&) = default;

  private:
    int k_;
    int n_;
    std::uint32_t cells_;
    CellSet dom_;
    std::vector<Value> table_;
};

// Composition f[g_1, ..., g_n]: all g_i share arity m; the result has arity m,
// is defined exactly where every g_i is defined and the image tuple lies in
// dom(f), and applies f to the image there.
PartialFn compose(const PartialFn& f, std::span<const PartialFn> gs);

bool keys_less(const PartialFn& a, const PartialFn& b);

}  // namespace parclone
