#include "parclone/base.hpp"

#include <bit>

namespace parclone {

void check_domain(int k) {
    require(k >= kMinDomain && k <= kMaxDomain,
            "domain cardinality k must be in [" + std::to_string(kMinDomain) + ", " +
                std::to_string(kMaxDomain) + "], got " + std::to_string(k));
}

void check_arity(int n) {
    require(n >= 1 && n <= kMaxArity,
            "arity must be in [1, " + std::to_string(kMaxArity) + "], got " + std::to_string(n));
}

std::uint32_t cell_count(int k, int n) {
    check_domain(k);
    check_arity(n);
    std::uint64_t cells = 1;
    for (int i = 0; i < n; ++i) {
        cells *= static_cast<std::uint64_t>(k);
        require(cells <= kMaxCells, "k^n exceeds the structural cell limit");
    }
    return static_cast<std::uint32_t>(cells);
}

std::uint64_t pow_sat(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
        r *= base;
    }
    return r;
}

std::uint32_t encode_point(int k, std::span<const Value> coords) {
    check_domain(k);
    check_arity(static_cast<int>(coords.size()));
    std::uint64_t idx = 0;
    for (Value c : coords) {
        require(c < k, "coordinate " + std::to_string(int(c)) + " out of range for k=" + std::to_string(k));
        idx = idx * static_cast<std::uint64_t>(k) + c;
    }
    return static_cast<std::uint32_t>(idx);
}

std::vector<Value> decode_point(int k, int n, std::uint32_t index) {
    const std::uint32_t cells = cell_count(k, n);
    require(index < cells, "point index " + std::to_string(index) + " out of range, k^n=" + std::to_string(cells));
    std::vector<Value> coords(static_cast<std::size_t>(n));
    std::uint32_t rest = index;
    for (int i = n - 1; i >= 0; --i) {
        coords[static_cast<std::size_t>(i)] = static_cast<Value>(rest % static_cast<std::uint32_t>(k));
        rest /= static_cast<std::uint32_t>(k);
    }
    return coords;
}

Point::Point(int k, std::vector<Value> coords_in) : k(k), coords(std::move(coords_in)) {
    encode_point(k, coords);  // validates
}

Point Point::from_index(int k, int n, std::uint32_t index) {
    Point p;
    p.k = k;
    p.coords = decode_point(k, n, index);
    return p;
}

std::uint32_t CellSet::count() const {
    std::uint32_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
}

bool CellSet::none() const {
    for (std::uint64_t w : words_)
        if (w) return false;
    return true;
}

bool CellSet::is_subset_of(const CellSet& other) const {
    require(bits_ == other.bits_, "cell set size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

CellSet CellSet::full(std::uint32_t bits) {
    CellSet s(bits);
    for (std::uint32_t i = 0; i < bits; ++i) s.set(i);
    return s;
}

}  // namespace parclone
