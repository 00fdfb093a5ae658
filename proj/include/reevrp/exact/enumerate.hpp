#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "reevrp/customer_set.hpp"
#include "reevrp/model.hpp"

namespace reevrp::exact {

using Mask = std::uint32_t;

inline Mask customer_bit(NodeId c) { return Mask{1} << (c - 1); }

/// Objective coefficients of a route in the set-partitioning model. A subtype
/// is absent when the route may not use it: E needs distance <= D_E, G needs
/// distance > D_E (and is unavailable to battery-electric fleets).
struct SubtypeCosts {
    std::optional<Money> e;
    std::optional<Money> g;
    Money c = 0;

    std::optional<Money> get(Subtype k) const {
        switch (k) {
            case Subtype::E: return e;
            case Subtype::G: return g;
            case Subtype::C: return c;
        }
        return std::nullopt;
    }

    /// Cheapest cost a hybrid vehicle can realize on this route.
    std::optional<Money> hybrid() const { return e ? e : g; }
};

inline SubtypeCosts subtype_costs(Centimiles distance, const Instance& inst) {
    const auto& c = inst.cost();
    const Centimiles range = inst.fleet().ev_range;
    SubtypeCosts out;
    if (distance <= range) out.e = c.c_e * distance;
    if (distance > range && !c.bev_mode) out.g = c.c_g * distance - (c.c_g - c.c_e) * range;
    out.c = c.c_0 * distance;
    return out;
}

struct EnumeratedRoute {
    Route route;
    SubtypeCosts costs;
    CustomerSet customer_set;
};

inline EnumeratedRoute make_column(const Instance& inst, const Route& r) {
    EnumeratedRoute col{r, subtype_costs(r.stats.distance, inst), CustomerSet(inst.n())};
    for (NodeId c : r.customers) col.customer_set.insert(c);
    return col;
}

struct EnumerationOptions {
    int max_n = 12;
    // Keep only labels not dominated (duration and distance) by another label
    // with the same terminal node and visited set. Every customer set still
    // keeps a minimum-distance feasible route.
    bool dominance = false;
};

/// All elementary routes satisfying the capacity and duration limits, by
/// forward labeling from the origin depot.
inline std::vector<EnumeratedRoute> enumerate_routes(const Instance& inst,
                                                     const EnumerationOptions& opt = {}) {
    const int n = inst.n();
    if (n > opt.max_n || n > 31) throw InstanceTooLarge("route enumeration limited to n <= " +
                                                        std::to_string(std::min(opt.max_n, 31)));
    const auto& fleet = inst.fleet();
    const NodeId end = inst.destination();

    struct Label {
        Mask mask;
        NodeId node;
        Packages load;
        Seconds time;  // travel and service up to arrival at node
        Centimiles dist;
        std::int32_t parent;
        bool alive;
    };
    std::vector<Label> labels;
    labels.push_back({0, 0, 0, 0, 0, -1, true});
    std::vector<std::int32_t> frontier{0};
    std::unordered_map<std::uint64_t, std::vector<std::int32_t>> buckets;

    auto dominates = [](const Label& a, const Label& b) {
        return a.time <= b.time && a.dist <= b.dist;
    };

    std::vector<EnumeratedRoute> out;
    auto emit = [&](std::int32_t id) {
        const Label& l = labels[id];
        if (l.node == 0) return;
        const Seconds tau = l.time + inst.service_time(l.node) + inst.time(l.node, end);
        if (tau > fleet.max_duration) return;
        std::vector<NodeId> seq;
        for (std::int32_t k = id; labels[k].node != 0; k = labels[k].parent) seq.push_back(labels[k].node);
        std::reverse(seq.begin(), seq.end());
        out.push_back(make_column(inst, make_route(inst, std::move(seq))));
    };

    while (!frontier.empty()) {
        std::vector<std::int32_t> next;
        buckets.clear();
        for (std::int32_t id : frontier) {
            const Label cur = labels[id];
            if (!cur.alive) continue;
            for (NodeId j = 1; j <= n; ++j) {
                if (cur.mask & customer_bit(j)) continue;
                Label l{cur.mask | customer_bit(j), j, cur.load + inst.demand(j),
                        cur.time + inst.service_time(cur.node) + inst.time(cur.node, j),
                        cur.dist + inst.dist(cur.node, j), id, true};
                if (l.load > fleet.capacity || l.time > fleet.max_duration) continue;
                if (opt.dominance) {
                    auto& bucket = buckets[(static_cast<std::uint64_t>(l.mask) << 8) | static_cast<std::uint64_t>(j)];
                    bool dominated = false;
                    for (std::int32_t other : bucket) {
                        if (labels[other].alive && dominates(labels[other], l)) {
                            dominated = true;
                            break;
                        }
                    }
                    if (dominated) continue;
                    for (std::int32_t other : bucket)
                        if (labels[other].alive && dominates(l, labels[other])) labels[other].alive = false;
                    labels.push_back(l);
                    bucket.push_back(static_cast<std::int32_t>(labels.size() - 1));
                } else {
                    labels.push_back(l);
                }
                next.push_back(static_cast<std::int32_t>(labels.size() - 1));
            }
        }
        for (std::int32_t id : next)
            if (labels[id].alive) emit(id);
        frontier = std::move(next);
    }
    return out;
}

}  // namespace reevrp::exact
