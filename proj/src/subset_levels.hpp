#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace stopping::detail {

// All masks over n bits grouped by popcount, ascending within a group.
// offset[k]..offset[k+1] spans the masks of popcount k. Shared level
// driver for the subset DPs.
struct SubsetLevels {
    std::vector<std::uint32_t> masks;
    std::vector<std::int64_t> offset;  // size n + 2
};

inline SubsetLevels subsets_by_popcount(int n) {
    const std::uint64_t total = std::uint64_t(1) << n;
    SubsetLevels out;
    out.masks.resize(total);
    out.offset.assign(std::size_t(n) + 2, 0);
    for (std::uint64_t m = 0; m < total; ++m)
        ++out.offset[std::size_t(std::popcount(std::uint32_t(m))) + 1];
    for (std::size_t k = 1; k < out.offset.size(); ++k) out.offset[k] += out.offset[k - 1];
    std::vector<std::int64_t> cursor(out.offset.begin(), out.offset.end() - 1);
    for (std::uint64_t m = 0; m < total; ++m) {
        int k = std::popcount(std::uint32_t(m));
        out.masks[std::size_t(cursor[std::size_t(k)]++)] = std::uint32_t(m);
    }
    return out;
}

}  // namespace stopping::detail
