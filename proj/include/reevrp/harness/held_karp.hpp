#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "reevrp/types.hpp"

namespace reevrp::harness {

struct Tour {
    std::int64_t length = 0;
    std::vector<int> order;  // starts and ends at point 0
};

/// Exact shortest closed tour through all points, anchored at point 0, by
/// dynamic programming over subsets. Intended for at most 13 points.
inline Tour held_karp(const std::vector<std::vector<std::int64_t>>& d) {
    const int m = static_cast<int>(d.size());
    if (m == 0) return {};
    if (m > 20) throw InstanceTooLarge("held_karp supports at most 20 points");
    if (m == 1) return {0, {0, 0}};
    const int k = m - 1;  // points other than the anchor, indexed 0..k-1 in masks
    const std::size_t states = std::size_t{1} << k;
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> best(states * static_cast<std::size_t>(k), inf);
    std::vector<std::int8_t> prev(states * static_cast<std::size_t>(k), -1);
    auto at = [k](std::size_t mask, int last) { return mask * static_cast<std::size_t>(k) + static_cast<std::size_t>(last); };

    for (int j = 0; j < k; ++j) best[at(std::size_t{1} << j, j)] = d[0][j + 1];
    for (std::size_t mask = 1; mask < states; ++mask)
        for (int last = 0; last < k; ++last) {
            if (!(mask & (std::size_t{1} << last))) continue;
            const std::int64_t cur = best[at(mask, last)];
            if (cur >= inf) continue;
            for (int nxt = 0; nxt < k; ++nxt) {
                if (mask & (std::size_t{1} << nxt)) continue;
                const std::size_t m2 = mask | (std::size_t{1} << nxt);
                const std::int64_t v = cur + d[last + 1][nxt + 1];
                if (v < best[at(m2, nxt)]) {
                    best[at(m2, nxt)] = v;
                    prev[at(m2, nxt)] = static_cast<std::int8_t>(last);
                }
            }
        }

    const std::size_t full = states - 1;
    Tour t;
    t.length = inf;
    int end = -1;
    for (int last = 0; last < k; ++last) {
        const std::int64_t v = best[at(full, last)] + d[last + 1][0];
        if (v < t.length) {
            t.length = v;
            end = last;
        }
    }
    std::vector<int> rev;
    std::size_t mask = full;
    for (int cur = end; cur >= 0;) {
        rev.push_back(cur + 1);
        const int p = prev[at(mask, cur)];
        mask &= ~(std::size_t{1} << cur);
        cur = p;
    }
    t.order.push_back(0);
    t.order.insert(t.order.end(), rev.rbegin(), rev.rend());
    t.order.push_back(0);
    return t;
}

}  // namespace reevrp::harness
