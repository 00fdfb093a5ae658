#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "reevrp/its/params.hpp"
#include "reevrp/model.hpp"
#include "reevrp/rng.hpp"

namespace reevrp::its {

namespace detail {

struct Insertion {
    Centimiles added_dist = 0;
    Packages load = 0;
    Seconds duration = 0;
};

// Effect of inserting customer u after position pos of the path
// 0, c_1..c_L, n+1 (pos in [0, L]).
inline Insertion insertion_effect(const Instance& inst, const Route& r, NodeId u, std::size_t pos) {
    const NodeId prev = pos == 0 ? inst.origin() : r.customers[pos - 1];
    const NodeId next = pos == r.customers.size() ? inst.destination() : r.customers[pos];
    Insertion e;
    if (r.customers.empty()) {
        e.added_dist = inst.dist(prev, u) + inst.dist(u, next);
        e.duration = inst.time(prev, u) + inst.time(u, next) + inst.service_time(u);
    } else {
        e.added_dist = inst.dist(prev, u) + inst.dist(u, next) - inst.dist(prev, next);
        e.duration = r.stats.duration + inst.time(prev, u) + inst.time(u, next) -
                     inst.time(prev, next) + inst.service_time(u);
    }
    e.load = r.stats.load + inst.demand(u);
    return e;
}

inline void insert_at(const Instance& inst, Route& r, NodeId u, std::size_t pos) {
    r.customers.insert(r.customers.begin() + static_cast<std::ptrdiff_t>(pos), u);
    r.stats = compute_stats(inst, r.customers);
}

// Fills one route with the randomized greedy rule: candidates are unrouted
// customers with a feasible position; the greedy value mixes normalized
// insertion cost, residual capacity and residual duration.
inline void fill_route(const Instance& inst, Route& route, std::vector<NodeId>& unrouted, int rcl,
                       Rng& rng) {
    const auto& fleet = inst.fleet();
    const double w_cost = rng.uniform01();
    const double w_cap = rng.uniform01();
    const double w_dur = rng.uniform01();
    struct Option {
        std::size_t idx;  // into unrouted
        std::size_t pos;
        Insertion eff;
    };
    std::vector<Option> options;
    struct Candidate {
        double g;
        std::size_t idx;
        std::size_t pos;
    };
    std::vector<Candidate> cands;
    while (!unrouted.empty()) {
        options.clear();
        Centimiles max_cost = 0;
        for (std::size_t k = 0; k < unrouted.size(); ++k) {
            const NodeId u = unrouted[k];
            for (std::size_t pos = 0; pos <= route.customers.size(); ++pos) {
                const Insertion e = insertion_effect(inst, route, u, pos);
                if (e.load > fleet.capacity || e.duration > fleet.max_duration) continue;
                options.push_back({k, pos, e});
                max_cost = std::max(max_cost, e.added_dist);
            }
        }
        if (options.empty()) return;
        const double cost_norm = max_cost > 0 ? static_cast<double>(max_cost) : 1.0;
        cands.clear();
        for (const Option& o : options) {
            const double g =
                w_cost * static_cast<double>(o.eff.added_dist) / cost_norm +
                w_cap * static_cast<double>(fleet.capacity - o.eff.load) /
                    static_cast<double>(fleet.capacity) +
                w_dur * static_cast<double>(fleet.max_duration - o.eff.duration) /
                    static_cast<double>(fleet.max_duration);
            if (cands.empty() || cands.back().idx != o.idx)
                cands.push_back({g, o.idx, o.pos});
            else if (g < cands.back().g)
                cands.back() = {g, o.idx, o.pos};
        }
        std::stable_sort(cands.begin(), cands.end(),
                         [](const Candidate& a, const Candidate& b) { return a.g < b.g; });
        const std::size_t len = std::min<std::size_t>(cands.size(), static_cast<std::size_t>(rcl));
        const Candidate pick = cands[rng.below(len)];
        insert_at(inst, route, unrouted[pick.idx], pick.pos);
        unrouted.erase(unrouted.begin() + static_cast<std::ptrdiff_t>(pick.idx));
    }
}

// Inserts u into the existing route/position minimizing a randomly weighted
// sum of insertion cost, capacity violation and duration violation.
inline void insert_leftover(const Instance& inst, Solution& sol, NodeId u, Rng& rng) {
    const auto& fleet = inst.fleet();
    const double w_cost = rng.uniform01();
    const double w_cap = rng.uniform01();
    const double w_dur = rng.uniform01();
    Centimiles max_cost = 0;
    for (const Route& r : sol.routes)
        for (std::size_t pos = 0; pos <= r.customers.size(); ++pos)
            max_cost = std::max(max_cost, insertion_effect(inst, r, u, pos).added_dist);
    const double cost_norm = max_cost > 0 ? static_cast<double>(max_cost) : 1.0;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_r = 0, best_pos = 0;
    for (std::size_t f = 0; f < sol.routes.size(); ++f) {
        const Route& r = sol.routes[f];
        for (std::size_t pos = 0; pos <= r.customers.size(); ++pos) {
            const Insertion e = insertion_effect(inst, r, u, pos);
            const double g =
                w_cost * static_cast<double>(e.added_dist) / cost_norm +
                w_cap * static_cast<double>(std::max<Packages>(e.load - fleet.capacity, 0)) /
                    static_cast<double>(fleet.capacity) +
                w_dur * static_cast<double>(std::max<Seconds>(e.duration - fleet.max_duration, 0)) /
                    static_cast<double>(fleet.max_duration);
            if (g < best) {
                best = g;
                best_r = f;
                best_pos = pos;
            }
        }
    }
    insert_at(inst, sol.routes[best_r], u, best_pos);
}

}  // namespace detail

/// Sequential insertion: opens hybrid routes while fewer than m_hybrid exist,
/// then conventional ones, filling each through the restricted candidate
/// list. Customers left once no route can be opened go to the cheapest
/// (possibly infeasible) position. Keeps D1 and D2 whenever the fleet is
/// nonempty; throws Infeasible when customers remain and no vehicle exists.
inline void insert_customers(const Instance& inst, Solution& sol, std::vector<NodeId> unrouted,
                             int rcl, Rng& rng) {
    const auto& fleet = inst.fleet();
    std::int64_t hybrids = sol.count(VehicleType::Hybrid);
    std::int64_t convs = sol.count(VehicleType::Conventional);
    while (!unrouted.empty()) {
        VehicleType type;
        if (hybrids < fleet.m_hybrid)
            type = VehicleType::Hybrid;
        else if (convs < fleet.m_conventional)
            type = VehicleType::Conventional;
        else
            break;
        Route route;
        detail::fill_route(inst, route, unrouted, rcl, rng);
        if (route.empty()) break;  // nothing fits an empty vehicle on its own
        sol.routes.push_back(std::move(route));
        sol.types.push_back(type);
        (type == VehicleType::Hybrid ? hybrids : convs) += 1;
    }
    rng.shuffle(unrouted.begin(), unrouted.end());
    for (NodeId u : unrouted) {
        if (sol.routes.empty()) {
            if (fleet.m_hybrid + fleet.m_conventional == 0)
                throw Infeasible("no vehicles available to serve customers");
            sol.routes.push_back(make_route(inst, {u}));
            sol.types.push_back(fleet.m_hybrid > 0 ? VehicleType::Hybrid : VehicleType::Conventional);
            continue;
        }
        detail::insert_leftover(inst, sol, u, rng);
    }
}

inline Solution construct_solution(const Instance& inst, const ItsParams& params, Rng& rng) {
    Solution sol;
    std::vector<NodeId> all;
    for (NodeId c = 1; c <= inst.n(); ++c) all.push_back(c);
    insert_customers(inst, sol, std::move(all), params.rcl, rng);
    return sol;
}

}  // namespace reevrp::its
