#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "reevrp/exact/enumerate.hpp"

namespace reevrp::exact {

struct ExactResult {
    Solution solution;
    Money objective = 0;
    std::size_t routes_enumerated = 0;
};

/// Optimal solution by dynamic programming over covered-customer sets and
/// vehicle usage (hybrid, conventional). Routes come from dominance-pruned
/// enumeration; only the shortest feasible route per customer set matters
/// because every subtype cost increases with distance.
inline ExactResult solve_exact(const Instance& inst, int max_n = 12) {
    const int n = inst.n();
    if (n > max_n || n > 31) throw InstanceTooLarge("exact solver limited to n <= " + std::to_string(max_n));
    ExactResult res;
    if (n == 0) return res;

    const auto columns = enumerate_routes(inst, {max_n, true});
    res.routes_enumerated = columns.size();

    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::int32_t> best_route(subsets, -1);
    for (std::size_t k = 0; k < columns.size(); ++k) {
        Mask m = 0;
        for (NodeId c : columns[k].route.customers) m |= customer_bit(c);
        auto& slot = best_route[m];
        if (slot < 0 || columns[k].route.stats.distance < columns[slot].route.stats.distance)
            slot = static_cast<std::int32_t>(k);
    }

    const auto& fleet = inst.fleet();
    const int max_h = static_cast<int>(std::min<std::int64_t>(fleet.m_hybrid, n));
    const int max_c = static_cast<int>(std::min<std::int64_t>(fleet.m_conventional, n));
    const std::size_t hs = static_cast<std::size_t>(max_h) + 1;
    const std::size_t cs = static_cast<std::size_t>(max_c) + 1;
    auto index = [&](Mask m, int h, int c) {
        return (static_cast<std::size_t>(m) * hs + static_cast<std::size_t>(h)) * cs +
               static_cast<std::size_t>(c);
    };
    constexpr Money kInf = std::numeric_limits<Money>::max();
    std::vector<Money> value(subsets * hs * cs, kInf);
    struct Parent {
        std::uint32_t prev_state = 0;
        Mask route_set = 0;
        bool hybrid = false;
    };
    std::vector<Parent> parent(value.size());
    value[index(0, 0, 0)] = 0;

    const Mask full = static_cast<Mask>(subsets - 1);
    for (Mask covered = 0; covered < full; ++covered) {
        const Mask open = full & ~covered;
        const Mask low = open & (~open + 1);
        const Mask rest = open & ~low;
        for (int h = 0; h <= max_h; ++h) {
            for (int c = 0; c <= max_c; ++c) {
                const std::size_t from = index(covered, h, c);
                const Money base = value[from];
                if (base == kInf) continue;
                Mask sub = rest;
                while (true) {
                    const Mask s = sub | low;
                    const std::int32_t r = best_route[s];
                    if (r >= 0) {
                        const auto& costs = columns[static_cast<std::size_t>(r)].costs;
                        const Mask to_mask = covered | s;
                        if (h < max_h) {
                            if (auto hc = costs.hybrid()) {
                                const std::size_t to = index(to_mask, h + 1, c);
                                if (base + *hc < value[to]) {
                                    value[to] = base + *hc;
                                    parent[to] = {static_cast<std::uint32_t>(from), s, true};
                                }
                            }
                        }
                        if (c < max_c) {
                            const std::size_t to = index(to_mask, h, c + 1);
                            if (base + costs.c < value[to]) {
                                value[to] = base + costs.c;
                                parent[to] = {static_cast<std::uint32_t>(from), s, false};
                            }
                        }
                    }
                    if (sub == 0) break;
                    sub = (sub - 1) & rest;
                }
            }
        }
    }

    std::size_t best_state = 0;
    Money best = kInf;
    for (int h = 0; h <= max_h; ++h)
        for (int c = 0; c <= max_c; ++c) {
            const std::size_t s = index(full, h, c);
            if (value[s] < best) {
                best = value[s];
                best_state = s;
            }
        }
    if (best == kInf) throw Infeasible("no feasible solution for the given fleet and limits");

    res.objective = best;
    std::size_t s = best_state;
    while (s != index(0, 0, 0)) {
        const Parent& p = parent[s];
        const auto& col = columns[static_cast<std::size_t>(best_route[p.route_set])];
        res.solution.routes.push_back(col.route);
        res.solution.types.push_back(p.hybrid ? VehicleType::Hybrid : VehicleType::Conventional);
        s = p.prev_state;
    }
    std::reverse(res.solution.routes.begin(), res.solution.routes.end());
    std::reverse(res.solution.types.begin(), res.solution.types.end());
    return res;
}

}  // namespace reevrp::exact
