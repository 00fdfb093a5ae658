#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "reevrp/model.hpp"
#include "reevrp/pricing/duals.hpp"
#include "reevrp/pricing/ng_sets.hpp"

namespace reevrp::pricing {

/// Arc reduced costs of one subtype. Summing arc costs along a path and
/// adding the source constant yields the column's reduced cost.
class ArcCosts {
public:
    ArcCosts(const Instance& inst, Subtype k, const DualValues& duals) : v_(inst.num_nodes()) {
        duals.validate(inst);
        const auto& c = inst.cost();
        const Centimiles range = inst.fleet().ev_range;
        const Rate rate = k == Subtype::E ? c.c_e : k == Subtype::G ? c.c_g : c.c_0;
        cost_.assign(static_cast<std::size_t>(v_) * static_cast<std::size_t>(v_), 0);
        for (NodeId i = 0; i < v_; ++i)
            for (NodeId j = 0; j < v_; ++j) {
                Money a = rate * inst.dist(i, j);
                if (k == Subtype::G && i == inst.origin()) a -= (c.c_g - c.c_e) * range;
                if (k == Subtype::G) a -= duals.strength * inst.dist(i, j);
                if (inst.is_customer(j)) a -= duals.pi[j];
                at(i, j) = a;
            }
        if (k == Subtype::G) {
            for (const auto& cut : duals.ipec) {
                const PathIncidence p = path_incidence(inst, cut.path);
                for (const auto& [i, j] : p.closure) at(i, j) -= cut.dual;
            }
        }
        for (const auto& cut : duals.rci) {
            std::vector<NodeId> s = cut.set;
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            for (NodeId i : s)
                for (NodeId j : s)
                    if (i != j) at(i, j) -= cut.dual;
        }
        source_ = -duals.mu(k) + (k == Subtype::G ? duals.strength * range : 0);
    }

    Money arc(NodeId i, NodeId j) const { return cost_[idx(i, j)]; }
    Money source() const { return source_; }

    Money path_cost(const Instance& inst, std::span<const NodeId> customers) const {
        Money total = source_;
        NodeId prev = inst.origin();
        for (NodeId v : customers) {
            total += arc(prev, v);
            prev = v;
        }
        return total + arc(prev, inst.destination());
    }

private:
    std::size_t idx(NodeId i, NodeId j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(v_) + static_cast<std::size_t>(j);
    }
    Money& at(NodeId i, NodeId j) { return cost_[idx(i, j)]; }

    int v_;
    std::vector<Money> cost_;
    Money source_ = 0;
};

inline Money reduced_cost(const Instance& inst, std::span<const NodeId> customers, Subtype k,
                          const DualValues& duals) {
    return ArcCosts(inst, k, duals).path_cost(inst, customers);
}

enum class PricingMode { Exact, Heuristic };

struct PricingOptions {
    PricingMode mode = PricingMode::Exact;
    bool dominance = true;
    std::size_t label_limit = 20'000'000;
};

struct PricedRoute {
    Route route;
    Money reduced_cost = 0;
};

struct PricingResult {
    std::vector<PricedRoute> routes;  // ascending reduced cost
    std::size_t labels = 0;

    std::optional<Money> min_reduced_cost() const {
        if (routes.empty()) return std::nullopt;
        return routes.front().reduced_cost;
    }
};

/// Forward labeling over ng-routes for one subtype. Capacity, duration and
/// (for the all-electric subtype) distance are disposable resources; the
/// extender subtype's distance floor is not modelled here. Returns every
/// completed route with negative reduced cost among the surviving labels.
/// Heuristic mode drops the forbidden-set test from dominance.
inline PricingResult price(const Instance& inst, Subtype k, const DualValues& duals, const NgSets& ng,
                           const PricingOptions& opt = {}) {
    PricingResult res;
    if (inst.n() == 0) return res;
    if (inst.n() > kMaxPricingCustomers) throw InstanceTooLarge("pricing limited to n <= 64");
    if (ng.n() != inst.n()) throw InvalidInput("ng-sets built for a different instance");
    if (k == Subtype::G && inst.cost().bev_mode) return res;

    const ArcCosts costs(inst, k, duals);
    const auto& fleet = inst.fleet();
    const bool track_range = k == Subtype::E;
    const bool check_forbidden = opt.mode == PricingMode::Exact;

    struct Label {
        NodeId node;
        Packages load;
        Seconds time;
        Centimiles dist;
        Money rcost;
        NodeMask forbidden;
        std::int32_t parent;
        bool alive;
    };
    std::vector<Label> labels;
    labels.push_back({inst.origin(), 0, 0, 0, costs.source(), 0, -1, true});

    std::vector<std::vector<std::int32_t>> by_load(static_cast<std::size_t>(fleet.capacity) + 1);
    std::vector<std::vector<std::int32_t>> at_node(static_cast<std::size_t>(inst.num_nodes()));
    by_load[0].push_back(0);

    auto dominates = [&](const Label& a, const Label& b) {
        if (check_forbidden && (a.forbidden & ~b.forbidden) != 0) return false;
        if (a.load > b.load || a.time > b.time || a.rcost > b.rcost) return false;
        return !track_range || a.dist <= b.dist;
    };

    auto sequence = [&](std::int32_t id) {
        std::vector<NodeId> seq;
        for (std::int32_t p = id; labels[p].parent >= 0; p = labels[p].parent) seq.push_back(labels[p].node);
        std::reverse(seq.begin(), seq.end());
        return seq;
    };

    const NodeId end = inst.destination();
    for (std::size_t load = 0; load < by_load.size(); ++load) {
        for (std::size_t pos = 0; pos < by_load[load].size(); ++pos) {
            const std::int32_t id = by_load[load][pos];
            const Label cur = labels[id];
            if (!cur.alive) continue;
            const Seconds leave = cur.time + inst.service_time(cur.node);

            if (cur.node != inst.origin()) {
                const Seconds t = leave + inst.time(cur.node, end);
                const Centimiles d = cur.dist + inst.dist(cur.node, end);
                const Money rc = cur.rcost + costs.arc(cur.node, end);
                if (t <= fleet.max_duration && (!track_range || d <= fleet.ev_range) && rc < 0)
                    res.routes.push_back({make_route(inst, sequence(id)), rc});
            }

            for (NodeId j = 1; j <= inst.n(); ++j) {
                if (j == cur.node || (cur.forbidden & node_bit(j))) continue;
                Label l{j,
                        cur.load + inst.demand(j),
                        leave + inst.time(cur.node, j),
                        cur.dist + inst.dist(cur.node, j),
                        cur.rcost + costs.arc(cur.node, j),
                        (cur.forbidden & ng.of(j)) | node_bit(j),
                        id,
                        true};
                if (l.load > fleet.capacity || l.time > fleet.max_duration) continue;
                if (track_range && l.dist > fleet.ev_range) continue;
                auto& bucket = at_node[j];
                if (opt.dominance) {
                    bool dominated = false;
                    for (std::int32_t o : bucket)
                        if (labels[o].alive && dominates(labels[o], l)) {
                            dominated = true;
                            break;
                        }
                    if (dominated) continue;
                    std::erase_if(bucket, [&](std::int32_t o) {
                        if (!labels[o].alive) return true;
                        if (dominates(l, labels[o])) {
                            labels[o].alive = false;
                            return true;
                        }
                        return false;
                    });
                }
                if (labels.size() >= opt.label_limit) throw InstanceTooLarge("pricing label limit reached");
                labels.push_back(l);
                const auto nid = static_cast<std::int32_t>(labels.size() - 1);
                if (opt.dominance) bucket.push_back(nid);
                by_load[static_cast<std::size_t>(l.load)].push_back(nid);
            }
        }
    }
    res.labels = labels.size();
    std::stable_sort(res.routes.begin(), res.routes.end(), [](const PricedRoute& a, const PricedRoute& b) {
        if (a.reduced_cost != b.reduced_cost) return a.reduced_cost < b.reduced_cost;
        return a.route.customers < b.route.customers;
    });
    return res;
}

}  // namespace reevrp::pricing
