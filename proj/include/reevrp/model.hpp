#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "reevrp/instance.hpp"
#include "reevrp/types.hpp"

namespace reevrp {

struct RouteStats {
    Packages load = 0;
    Centimiles distance = 0;
    Seconds duration = 0;
    Centimiles ev_overflow = 0;  // max{distance - D_E, 0}

    friend bool operator==(const RouteStats&, const RouteStats&) = default;
};

/// A route keeps only its customer sequence; the depots 0 and n+1 are implicit.
struct Route {
    std::vector<NodeId> customers;
    RouteStats stats;

    bool empty() const { return customers.empty(); }

    std::vector<NodeId> path(const Instance& inst) const {
        std::vector<NodeId> p;
        p.reserve(customers.size() + 2);
        p.push_back(inst.origin());
        p.insert(p.end(), customers.begin(), customers.end());
        p.push_back(inst.destination());
        return p;
    }
};

inline RouteStats compute_stats(const Instance& inst, std::span<const NodeId> customers) {
    RouteStats st;
    NodeId prev = inst.origin();
    for (NodeId v : customers) {
        st.load += inst.demand(v);
        st.distance += inst.dist(prev, v);
        st.duration += inst.time(prev, v) + inst.service_time(prev);
        prev = v;
    }
    if (!customers.empty()) {
        st.distance += inst.dist(prev, inst.destination());
        st.duration += inst.time(prev, inst.destination()) + inst.service_time(prev);
    }
    st.ev_overflow = std::max<Centimiles>(st.distance - inst.fleet().ev_range, 0);
    return st;
}

inline Route make_route(const Instance& inst, std::vector<NodeId> customers) {
    Route r{std::move(customers), {}};
    r.stats = compute_stats(inst, r.customers);
    return r;
}

/// Piecewise-linear mileage cost of one route.
inline Money route_cost(Centimiles distance, VehicleType type, const CostModel& cost,
                        Centimiles ev_range) {
    if (type == VehicleType::Conventional) return cost.c_0 * distance;
    if (cost.bev_mode && distance > ev_range)
        throw BevRangeExceeded("battery-electric route exceeds the EV range");
    const Centimiles electric = std::min(distance, ev_range);
    const Centimiles extended = std::max<Centimiles>(distance - ev_range, 0);
    return cost.c_e * electric + cost.c_g * extended;
}

inline Money route_cost(const Route& r, VehicleType type, const Instance& inst) {
    return route_cost(r.stats.distance, type, inst.cost(), inst.fleet().ev_range);
}

struct Solution {
    std::vector<Route> routes;
    std::vector<VehicleType> types;

    std::size_t size() const { return routes.size(); }

    std::int64_t count(VehicleType t) const {
        return std::count(types.begin(), types.end(), t);
    }
};

inline Money solution_cost(const Solution& sol, const Instance& inst) {
    Money total = 0;
    for (std::size_t f = 0; f < sol.routes.size(); ++f)
        total += route_cost(sol.routes[f], sol.types[f], inst);
    return total;
}

struct RouteViolation {
    std::size_t route = 0;
    Packages capacity_excess = 0;
    Seconds duration_excess = 0;
    Centimiles bev_range_excess = 0;
    std::vector<NodeId> repeated;  // customers visited more than once on this route
    std::vector<NodeId> invalid;   // node ids outside 1..n
    bool empty = false;
};

struct FeasibilityReport {
    std::vector<RouteViolation> routes;
    std::vector<NodeId> missing;     // D1: customers never visited
    std::vector<NodeId> duplicated;  // D1: customers on more than one route
    std::int64_t hybrid_excess = 0;  // D2
    std::int64_t conventional_excess = 0;
    bool shape_mismatch = false;     // routes/types length differ

    bool partition_ok() const { return missing.empty() && duplicated.empty(); }
    bool fleet_ok() const { return hybrid_excess == 0 && conventional_excess == 0; }
    bool routes_ok() const { return routes.empty(); }
    bool feasible() const { return !shape_mismatch && partition_ok() && fleet_ok() && routes_ok(); }
};

inline FeasibilityReport check_feasibility(const Solution& sol, const Instance& inst) {
    FeasibilityReport rep;
    rep.shape_mismatch = sol.routes.size() != sol.types.size();
    const auto& fleet = inst.fleet();
    std::vector<int> seen_on(static_cast<std::size_t>(inst.n()) + 2, -1);
    std::vector<char> dup(static_cast<std::size_t>(inst.n()) + 2, 0);
    for (std::size_t f = 0; f < sol.routes.size(); ++f) {
        const Route& r = sol.routes[f];
        RouteViolation v;
        v.route = f;
        v.empty = r.customers.empty();
        std::vector<char> local(static_cast<std::size_t>(inst.n()) + 2, 0);
        bool valid_nodes = true;
        for (NodeId c : r.customers) {
            if (!inst.is_customer(c)) {
                v.invalid.push_back(c);
                valid_nodes = false;
                continue;
            }
            if (local[c]++ == 1) v.repeated.push_back(c);
            if (seen_on[c] >= 0 && seen_on[c] != static_cast<int>(f)) dup[c] = 1;
            seen_on[c] = static_cast<int>(f);
        }
        if (valid_nodes) {
            const RouteStats st = compute_stats(inst, r.customers);
            v.capacity_excess = std::max<Packages>(st.load - fleet.capacity, 0);
            v.duration_excess = std::max<Seconds>(st.duration - fleet.max_duration, 0);
            if (inst.cost().bev_mode && f < sol.types.size() &&
                sol.types[f] == VehicleType::Hybrid)
                v.bev_range_excess = st.ev_overflow;
        }
        if (v.empty || !v.invalid.empty() || !v.repeated.empty() || v.capacity_excess > 0 ||
            v.duration_excess > 0 || v.bev_range_excess > 0)
            rep.routes.push_back(std::move(v));
    }
    for (NodeId c = 1; c <= inst.n(); ++c) {
        if (seen_on[c] < 0) rep.missing.push_back(c);
        if (dup[c]) rep.duplicated.push_back(c);
    }
    rep.hybrid_excess = std::max<std::int64_t>(sol.count(VehicleType::Hybrid) - fleet.m_hybrid, 0);
    rep.conventional_excess =
        std::max<std::int64_t>(sol.count(VehicleType::Conventional) - fleet.m_conventional, 0);
    return rep;
}

/// Penalty weights of the merit function. Duration penalties are quoted per
/// hour and prorated per second with floor division.
struct MeritParams {
    Money phi_q = 0;           // per package over capacity
    Money phi_t_per_hour = 0;  // per hour over the duration limit
    Money phi_range = 0;       // per centimile over D_E on a BEV (bev_mode only)
};

inline MeritParams default_merit_params(const Instance& inst) {
    const double scale = 1e4 * static_cast<double>(inst.cost().c_0) * inst.mean_distance();
    const Money w = std::max<Money>(static_cast<Money>(scale), 1);
    return MeritParams{w, w, std::max<Money>(10000 * inst.cost().c_0, 1)};
}

inline Money duration_penalty(Seconds excess, const MeritParams& p) {
    if (excess <= 0) return 0;
    const __int128 v = static_cast<__int128>(p.phi_t_per_hour) * excess / kSecondsPerHour;
    return static_cast<Money>(v);
}

/// Cost used by the search for a hybrid route. In BEV mode the extender rate
/// is replaced by the range penalty so over-range routes remain comparable.
inline Money search_cost(const RouteStats& st, VehicleType type, const Instance& inst,
                         const MeritParams& p) {
    const auto& c = inst.cost();
    if (type == VehicleType::Conventional) return c.c_0 * st.distance;
    const Centimiles electric = st.distance - st.ev_overflow;
    const Rate ext = c.bev_mode ? p.phi_range : c.c_g;
    return c.c_e * electric + ext * st.ev_overflow;
}

/// Merit contribution of one route: search cost plus capacity and duration
/// penalties.
inline Money route_merit(const RouteStats& st, VehicleType type, const Instance& inst,
                         const MeritParams& p) {
    if (st.load == 0 && st.distance == 0) return 0;
    const auto& fleet = inst.fleet();
    return search_cost(st, type, inst, p) +
           p.phi_q * std::max<Packages>(st.load - fleet.capacity, 0) +
           duration_penalty(st.duration - fleet.max_duration, p);
}

inline Money merit(const Solution& sol, const Instance& inst, const MeritParams& p) {
    Money total = 0;
    for (std::size_t f = 0; f < sol.routes.size(); ++f)
        total += route_merit(compute_stats(inst, sol.routes[f].customers), sol.types[f], inst, p);
    return total;
}

struct MetricsRecord {
    Money cost = 0;
    Centimiles vmt = 0;
    Seconds vht = 0;
    Seconds travel_time = 0;  // VHT excluding service time
    Centimiles ev_miles = 0;
    Centimiles extender_miles = 0;
    Centimiles cv_miles = 0;
    std::int64_t hybrid_vehicles = 0;
    std::int64_t conventional_vehicles = 0;
    Packages packages = 0;
    double capacity_utilization = 0.0;
    double packages_per_vehicle = 0.0;
};

inline MetricsRecord metrics(const Solution& sol, const Instance& inst) {
    if (!check_feasibility(sol, inst).feasible())
        throw Infeasible("metrics requested for an infeasible solution");
    MetricsRecord m;
    const Centimiles range = inst.fleet().ev_range;
    for (std::size_t f = 0; f < sol.routes.size(); ++f) {
        const RouteStats st = compute_stats(inst, sol.routes[f].customers);
        m.cost += route_cost(st.distance, sol.types[f], inst.cost(), range);
        m.vmt += st.distance;
        m.vht += st.duration;
        Seconds service = 0;
        for (NodeId c : sol.routes[f].customers) service += inst.service_time(c);
        m.travel_time += st.duration - service;
        m.packages += st.load;
        if (sol.types[f] == VehicleType::Hybrid) {
            ++m.hybrid_vehicles;
            m.ev_miles += std::min(st.distance, range);
            m.extender_miles += st.ev_overflow;
        } else {
            ++m.conventional_vehicles;
            m.cv_miles += st.distance;
        }
    }
    const auto fleet_used = static_cast<double>(sol.routes.size());
    if (fleet_used > 0) {
        m.capacity_utilization =
            static_cast<double>(m.packages) / (fleet_used * static_cast<double>(inst.fleet().capacity));
        m.packages_per_vehicle = static_cast<double>(m.packages) / fleet_used;
    }
    return m;
}

namespace detail {
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

/// Hash of a customer sequence in travel order.
inline std::uint64_t sequence_hash(std::span<const NodeId> customers) {
    std::uint64_t h = 0x51ed270b27eb5a6dULL;
    for (NodeId c : customers) h = detail::mix64(h ^ static_cast<std::uint64_t>(c));
    return detail::mix64(h ^ customers.size());
}

/// Fingerprint of the canonical form: routes ordered by first customer, each in
/// travel order, followed by the type vector in the same order.
inline std::uint64_t fingerprint(std::span<const std::uint64_t> route_hashes,
                                 std::span<const NodeId> first_customers,
                                 std::span<const VehicleType> types) {
    std::vector<std::size_t> order(route_hashes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return first_customers[a] < first_customers[b]; });
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (std::size_t f : order) h = detail::mix64(h ^ route_hashes[f]);
    for (std::size_t f : order) h = detail::mix64(h ^ (static_cast<std::uint64_t>(types[f]) + 7));
    return h;
}

inline std::uint64_t fingerprint(const Solution& sol) {
    std::vector<std::uint64_t> hashes;
    std::vector<NodeId> firsts;
    for (const Route& r : sol.routes) {
        hashes.push_back(sequence_hash(r.customers));
        firsts.push_back(r.customers.empty() ? 0 : r.customers.front());
    }
    return fingerprint(hashes, firsts, sol.types);
}

/// Chooses vehicle types for a fixed set of routes so that merit is minimal:
/// per-route savings of a hybrid over a conventional vehicle are independent,
/// so the best routes (largest savings) take the hybrids. Returns false when
/// the routes outnumber the fleet.
inline bool assign_types(std::span<const RouteStats> stats, const Instance& inst,
                         const MeritParams& p, std::vector<VehicleType>& types) {
    const std::size_t f_count = stats.size();
    const auto& fleet = inst.fleet();
    types.assign(f_count, VehicleType::Conventional);
    std::vector<std::pair<Money, std::size_t>> savings;
    savings.reserve(f_count);
    for (std::size_t f = 0; f < f_count; ++f) {
        const Money s = search_cost(stats[f], VehicleType::Conventional, inst, p) -
                        search_cost(stats[f], VehicleType::Hybrid, inst, p);
        savings.emplace_back(s, f);
    }
    std::stable_sort(savings.begin(), savings.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    const auto max_h = static_cast<std::size_t>(std::min<std::int64_t>(fleet.m_hybrid, f_count));
    const std::size_t min_h = f_count > static_cast<std::size_t>(fleet.m_conventional)
                                  ? f_count - static_cast<std::size_t>(fleet.m_conventional)
                                  : 0;
    std::size_t h = 0;
    while (h < max_h && savings[h].first > 0) ++h;
    h = std::max(h, std::min(min_h, max_h));
    for (std::size_t k = 0; k < h; ++k) types[savings[k].second] = VehicleType::Hybrid;
    return min_h <= max_h;
}

inline bool assign_types(Solution& sol, const Instance& inst, const MeritParams& p) {
    std::vector<RouteStats> stats;
    for (const Route& r : sol.routes) stats.push_back(r.stats);
    return assign_types(stats, inst, p, sol.types);
}

}  // namespace reevrp
