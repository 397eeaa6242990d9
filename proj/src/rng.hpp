#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace hoop::detail {

// std::uniform_int_distribution differs between standard libraries; plain
// rejection sampling on mt19937_64 output keeps seeded results portable.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[bounded(rng, i)]);
}

} // namespace hoop::detail
