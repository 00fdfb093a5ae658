#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "reevrp/types.hpp"

namespace reevrp::harness {

class InsufficientCapacity : public InvalidInput {
public:
    explicit InsufficientCapacity(const std::string& what) : InvalidInput(what) {}
};

struct DepotAssignment {
    std::vector<int> depot_of;  // per customer
    std::int64_t objective = 0;
};

/// Capacitated customer-to-depot assignment minimizing total cost, where
/// cost[c][d] is customer c's out-and-back travel time to depot d.
///
/// Successive shortest paths: customers enter one at a time and each is
/// routed along a cheapest augmenting chain "c -> d1, move someone from d1 to
/// d2, ..., dk has room". Chains are found by Bellman-Ford on a graph over
/// depots whose arc (a, b) costs the cheapest reassignment of a customer
/// currently at a to b. The residual graph has no negative cycles after each
/// step, which keeps the partial assignment optimal.
inline DepotAssignment assign_depots(const std::vector<std::vector<std::int64_t>>& cost,
                                     const std::vector<std::int64_t>& capacity) {
    const int nd = static_cast<int>(capacity.size());
    const int nc = static_cast<int>(cost.size());
    std::int64_t total_cap = 0;
    for (auto c : capacity) {
        if (c < 0) throw InvalidInput("depot capacities must be nonnegative");
        total_cap += c;
    }
    if (total_cap < nc) throw InsufficientCapacity("depot capacities cannot cover every customer");
    for (const auto& row : cost)
        if (static_cast<int>(row.size()) != nd) throw InvalidInput("cost matrix must have one column per depot");

    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    DepotAssignment res;
    res.depot_of.assign(static_cast<std::size_t>(nc), -1);
    std::vector<std::int64_t> used(static_cast<std::size_t>(nd), 0);

    for (int u = 0; u < nc; ++u) {
        // Cheapest reassignment a -> b and the customer realizing it.
        std::vector<std::int64_t> w(static_cast<std::size_t>(nd * nd), inf);
        std::vector<int> who(static_cast<std::size_t>(nd * nd), -1);
        for (int c = 0; c < u; ++c) {
            const int a = res.depot_of[c];
            for (int b = 0; b < nd; ++b) {
                if (b == a) continue;
                const std::int64_t delta = cost[c][b] - cost[c][a];
                auto& slot = w[static_cast<std::size_t>(a * nd + b)];
                if (delta < slot) {
                    slot = delta;
                    who[static_cast<std::size_t>(a * nd + b)] = c;
                }
            }
        }
        std::vector<std::int64_t> dist(static_cast<std::size_t>(nd));
        std::vector<int> pred(static_cast<std::size_t>(nd), -1);
        for (int d = 0; d < nd; ++d) dist[d] = cost[u][d];
        for (int round = 0; round < nd; ++round) {
            bool changed = false;
            for (int a = 0; a < nd; ++a)
                for (int b = 0; b < nd; ++b) {
                    const std::int64_t wab = w[static_cast<std::size_t>(a * nd + b)];
                    if (wab >= inf || dist[a] + wab >= dist[b]) continue;
                    dist[b] = dist[a] + wab;
                    pred[b] = a;
                    changed = true;
                }
            if (!changed) break;
        }
        int target = -1;
        for (int d = 0; d < nd; ++d)
            if (used[d] < capacity[d] && (target < 0 || dist[d] < dist[target])) target = d;

        // Walk the chain back: each hop moves one customer from pred to the hop's depot.
        ++used[target];
        int b = target;
        while (pred[b] >= 0) {
            const int a = pred[b];
            const int c = who[static_cast<std::size_t>(a * nd + b)];
            res.depot_of[c] = b;
            b = a;
        }
        res.depot_of[u] = b;
    }
    for (int c = 0; c < nc; ++c) res.objective += cost[c][res.depot_of[c]];
    return res;
}

}  // namespace reevrp::harness
