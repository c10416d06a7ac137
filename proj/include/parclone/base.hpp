#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace parclone {

// Domain elements are 0..k-1. k stays small (the engine is for desk-scale
// exhaustive runs), so a byte per value is plenty.
using Value = std::uint8_t;

inline constexpr int kMinDomain = 2;
inline constexpr int kMaxDomain = 64;
inline constexpr int kMaxArity = 16;
// Hard structural cap on k^n cells; per-operation limits are much tighter.
inline constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 20;

struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct resource_limit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct corrupt_cache : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw invalid_input(msg);
}

void check_domain(int k);
void check_arity(int n);

// k^n as a cell count; throws invalid_input when it exceeds kMaxCells.
std::uint32_t cell_count(int k, int n);

// Saturating k^n for counting formulas ((k+1)^(k^n) overflows fast).
// Returns UINT64_MAX on overflow.
std::uint64_t pow_sat(std::uint64_t base, std::uint64_t exp);

// --- tuple codec -----------------------------------------------------------
// Cells of A^n are indexed big-endian base k: the first coordinate is the
// most significant digit. Prefix-shaped domains such as {0} x A^(n-1) are
// then contiguous index ranges.

std::uint32_t encode_point(int k, std::span<const Value> coords);
std::vector<Value> decode_point(int k, int n, std::uint32_t index);

struct Point {
    int k = kMinDomain;
    std::vector<Value> coords;

    Point() = default;
    Point(int k, std::vector<Value> coords);
    static Point from_index(int k, int n, std::uint32_t index);

    int arity() const { return static_cast<int>(coords.size()); }
    std::uint32_t index() const { return encode_point(k, coords); }

    friend bool operator==(const Point&, const Point&) = default;
};

// --- cell sets -------------------------------------------------------------
// Bit set over cell indices; used for function domains and restriction masks.
class CellSet {
  public:
    CellSet() = default;
    explicit CellSet(std::uint32_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::uint32_t size() const { return bits_; }

    bool test(std::uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::uint32_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::uint32_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::uint32_t count() const;
    bool none() const;
    bool all() const { return count() == bits_; }

    bool is_subset_of(const CellSet& other) const;

    static CellSet full(std::uint32_t bits);

    const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const CellSet&, const CellSet&) = default;

  private:
    std::uint32_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace parclone
