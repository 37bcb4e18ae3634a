#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace bnt {

// Visits every size-s index combination of {0, ..., pool-1} in
// lexicographic order. fn receives the current combination as a sorted
// vector of indices and returns true to stop early. Returns true if some
// call stopped the walk.
template <typename Fn>
bool for_each_combination(std::uint32_t pool, std::uint32_t s, Fn&& fn) {
    if (s > pool) return false;
    std::vector<std::uint32_t> idx(s);
    for (std::uint32_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
        if (fn(static_cast<const std::vector<std::uint32_t>&>(idx))) return true;
        if (s == 0) return false;
        // advance: find rightmost slot that can move right
        std::uint32_t i = s;
        while (i > 0 && idx[i - 1] == pool - s + (i - 1)) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::uint32_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Visits combinations of sizes lo..hi (inclusive), smaller sizes first,
// lexicographic within a size.
template <typename Fn>
bool for_each_combination_up_to(std::uint32_t pool, std::uint32_t lo, std::uint32_t hi, Fn&& fn) {
    const std::uint32_t top = std::min(hi, pool);
    for (std::uint32_t s = lo; s <= top; ++s) {
        if (for_each_combination(pool, s, fn)) return true;
        if (s == top) break; // avoid wrap when top == UINT32_MAX
    }
    return false;
}

} // namespace bnt
