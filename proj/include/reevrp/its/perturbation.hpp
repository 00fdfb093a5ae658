#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "reevrp/its/construction.hpp"
#include "reevrp/its/params.hpp"
#include "reevrp/model.hpp"

namespace reevrp::its {

struct PerturbResult {
    Solution solution;
    std::vector<std::size_t> removed;  // indices into the input solution
    bool single_route = false;         // only the max-ratio route existed
};

/// Largest customer-to-customer distance from route a to route b.
inline Centimiles route_gap(const Instance& inst, const Route& a, const Route& b) {
    Centimiles best = 0;
    for (NodeId i : a.customers)
        for (NodeId j : b.customers) best = std::max(best, inst.dist(i, j));
    return best;
}

/// Index of the route with the largest cost per unit of carried load; ties go
/// to the lowest index.
inline std::size_t max_ratio_route(const Solution& sol, const Instance& inst, const MeritParams& mp) {
    std::size_t best = 0;
    for (std::size_t f = 1; f < sol.routes.size(); ++f) {
        const auto& a = sol.routes[f].stats;
        const auto& b = sol.routes[best].stats;
        const __int128 lhs = static_cast<__int128>(search_cost(a, sol.types[f], inst, mp)) * b.load;
        const __int128 rhs = static_cast<__int128>(search_cost(b, sol.types[best], inst, mp)) * a.load;
        if (lhs > rhs) best = f;
    }
    return best;
}

/// Which routes a perturbation removes: the max-ratio route r, every route
/// whose gap to r is below the threshold, or else the nearest one.
inline std::vector<std::size_t> perturbation_targets(const Solution& sol, const Instance& inst,
                                                     Centimiles threshold, const MeritParams& mp) {
    std::vector<std::size_t> removed;
    if (sol.routes.empty()) return removed;
    const std::size_t r = max_ratio_route(sol, inst, mp);
    removed.push_back(r);
    Centimiles nearest = std::numeric_limits<Centimiles>::max();
    std::size_t nearest_idx = r;
    for (std::size_t f = 0; f < sol.routes.size(); ++f) {
        if (f == r) continue;
        const Centimiles gap = route_gap(inst, sol.routes[r], sol.routes[f]);
        if (gap < threshold) removed.push_back(f);
        if (gap < nearest) {
            nearest = gap;
            nearest_idx = f;
        }
    }
    if (removed.size() == 1 && nearest_idx != r) removed.push_back(nearest_idx);
    std::sort(removed.begin(), removed.end());
    return removed;
}

inline PerturbResult perturb_solution(const Instance& inst, const Solution& sol,
                                      const ItsParams& params, Rng& rng) {
    const MeritParams mp = merit_params(params, inst);
    PerturbResult out;
    out.removed = perturbation_targets(sol, inst, perturb_threshold(params, inst), mp);
    out.single_route = sol.routes.size() == 1;
    std::vector<NodeId> unrouted;
    std::vector<char> drop(sol.routes.size(), 0);
    for (std::size_t f : out.removed) {
        drop[f] = 1;
        const auto& cs = sol.routes[f].customers;
        unrouted.insert(unrouted.end(), cs.begin(), cs.end());
    }
    for (std::size_t f = 0; f < sol.routes.size(); ++f) {
        if (drop[f]) continue;
        out.solution.routes.push_back(sol.routes[f]);
        out.solution.types.push_back(sol.types[f]);
    }
    insert_customers(inst, out.solution, std::move(unrouted), params.rcl, rng);
    return out;
}

}  // namespace reevrp::its
