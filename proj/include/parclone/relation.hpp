#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parclone/partial_fn.hpp"

namespace parclone {

// An h-ary relation on {0..k-1} as an explicit tuple set, kept sorted for
// deterministic iteration.
class Relation {
  public:
    Relation(int k, int h, std::vector<std::vector<Value>> tuples);

    int k() const { return k_; }
    int arity() const { return h_; }
    const std::vector<std::vector<Value>>& tuples() const { return tuples_; }
    std::size_t size() const { return tuples_.size(); }

    bool contains(std::span<const Value> tuple) const;
    bool contains_index(std::uint32_t tuple_index) const { return member_.test(tuple_index); }

    friend bool operator==(const Relation&, const Relation&) = default;

  private:
    int k_;
    int h_;
    std::vector<std::vector<Value>> tuples_;
    CellSet member_;  // bitmap over k^h tuple indices
};

// f preserves rho iff no h x n matrix with columns in rho and rows in dom(f)
// maps under f to a row tuple outside rho. Iterates all |rho|^n column
// choices with early exit.
bool preserves(const PartialFn& f, const Relation& rho);

class Permutation {
  public:
    Permutation(int k, std::vector<Value> mapping);

    // k/p disjoint cycles of length p on consecutive blocks:
    // (0 1 .. p-1)(p .. 2p-1)...((k-p) .. (k-1)). Requires p prime, p | k.
    static Permutation uniform_cycles(int k, int p);

    int k() const { return k_; }
    Value apply(Value x) const { return map_[x]; }
    const std::vector<Value>& mapping() const { return map_; }

    std::vector<std::vector<Value>> cycles() const;
    bool fixed_point_free() const;
    // Common cycle length when all cycles agree, otherwise nullopt.
    std::optional<int> uniform_cycle_length() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

  private:
    int k_;
    std::vector<Value> map_;
};

// Binary relation {(x, pi(x))}.
Relation graph_relation(const Permutation& pi);

// p-ary orbit relation {(x, pi(x), ..., pi^(p-1)(x))}; requires uniform
// fixed-point-free cycles.
Relation orbit_relation(const Permutation& pi);

// Built-in relations. Names accepted by by_name:
//   leq2, neq2, tardos8, chain(<k>), singleton(<k>,<a>),
//   graph(<k>,<p>), orbit(<k>,<p>)
namespace builtins {
Relation leq2();
Relation neq2();
Relation chain(int k);
Relation singleton(int k, int a);
Relation tardos8();
Relation by_name(std::string_view name);
std::vector<std::string> names();
// Covering pairs the tardos8 order is generated from (metadata; the relation
// itself stores the reflexive-transitive closure).
const std::vector<std::pair<int, int>>& tardos8_covers();
}  // namespace builtins

bool is_order(const Relation& rho);
bool is_bounded_order(const Relation& rho);

}  // namespace parclone
