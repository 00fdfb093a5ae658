#pragma once

#include <vector>

#include "reevrp/exact/enumerate.hpp"
#include "reevrp/model.hpp"

namespace reevrp::exact {

/// An integral solution of the set-partitioning model: each listed column
/// carries lambda = 1 for its subtype, every other variable is zero.
struct ColumnAssignment {
    EnumeratedRoute column;
    Subtype subtype = Subtype::C;
};

struct ColumnSolution {
    std::vector<ColumnAssignment> assignments;

    std::int64_t count(Subtype k) const {
        std::int64_t s = 0;
        for (const auto& a : assignments) s += a.subtype == k;
        return s;
    }
};

/// Objective coefficient of a route under a subtype, regardless of whether
/// the subtype is admissible for it.
inline Money column_cost(Centimiles distance, Subtype k, const CostModel& c, Centimiles range) {
    switch (k) {
        case Subtype::E: return c.c_e * distance;
        case Subtype::G: return c.c_g * distance - (c.c_g - c.c_e) * range;
        case Subtype::C: return c.c_0 * distance;
    }
    return 0;
}

inline Money column_objective(const ColumnSolution& cols, const Instance& inst) {
    Money total = 0;
    for (const auto& a : cols.assignments)
        total += column_cost(a.column.route.stats.distance, a.subtype, inst.cost(), inst.fleet().ev_range);
    return total;
}

/// Checks degree, fleet and subtype-range constraints of an integral column
/// solution, plus capacity/duration/elementarity of each column. Throws
/// InvalidColumns naming the first violation.
inline void validate_columns(const ColumnSolution& cols, const Instance& inst) {
    const auto& fleet = inst.fleet();
    const Centimiles range = inst.fleet().ev_range;
    CustomerSet covered(inst.n());
    std::size_t visits = 0;
    for (const auto& a : cols.assignments) {
        const Route& r = a.column.route;
        if (r.customers.empty()) throw InvalidColumns("column without customers");
        for (NodeId c : r.customers)
            if (!inst.is_customer(c)) throw InvalidColumns("column visits a non-customer node");
        const RouteStats st = compute_stats(inst, r.customers);
        if (!(st == r.stats)) throw InvalidColumns("column statistics inconsistent with its nodes");
        if (st.load > fleet.capacity) throw InvalidColumns("column exceeds capacity");
        if (st.duration > fleet.max_duration) throw InvalidColumns("column exceeds duration limit");
        if (a.subtype == Subtype::E && st.distance > range)
            throw InvalidColumns("all-electric subtype on a route longer than the EV range");
        if (a.subtype == Subtype::G && st.distance <= range)
            throw InvalidColumns("extender subtype on a route within the EV range");
        if (a.subtype == Subtype::G && inst.cost().bev_mode)
            throw InvalidColumns("extender subtype unavailable to battery-electric vehicles");
        for (NodeId c : r.customers) {
            if (covered.contains(c)) throw InvalidColumns("customer covered more than once");
            covered.insert(c);
            ++visits;
        }
    }
    if (visits != static_cast<std::size_t>(inst.n())) throw InvalidColumns("not every customer is covered");
    if (cols.count(Subtype::E) + cols.count(Subtype::G) > fleet.m_hybrid)
        throw InvalidColumns("hybrid fleet size exceeded");
    if (cols.count(Subtype::C) > fleet.m_conventional)
        throw InvalidColumns("conventional fleet size exceeded");
}

/// Maps a feasible (routes, types) solution to extended-type columns with the
/// same cost: hybrids within the EV range become E, longer ones G.
inline ColumnSolution map_to_columns(const Solution& sol, const Instance& inst) {
    if (!check_feasibility(sol, inst).feasible())
        throw InvalidInput("map_to_columns requires a feasible solution");
    ColumnSolution cols;
    const Centimiles range = inst.fleet().ev_range;
    for (std::size_t f = 0; f < sol.routes.size(); ++f) {
        const Route r = make_route(inst, sol.routes[f].customers);
        Subtype k = Subtype::C;
        if (sol.types[f] == VehicleType::Hybrid) k = r.stats.distance <= range ? Subtype::E : Subtype::G;
        cols.assignments.push_back({make_column(inst, r), k});
    }
    return cols;
}

/// Inverse mapping: E and G columns become hybrid routes, C columns
/// conventional ones.
inline Solution map_from_columns(const ColumnSolution& cols, const Instance& inst) {
    validate_columns(cols, inst);
    Solution sol;
    for (const auto& a : cols.assignments) {
        sol.routes.push_back(a.column.route);
        sol.types.push_back(vehicle_class(a.subtype));
    }
    return sol;
}

}  // namespace reevrp::exact
