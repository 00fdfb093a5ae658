#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "reevrp/instance.hpp"

namespace reevrp::pricing {

/// Bit mask over customers 1..n (bit c-1), n <= 64.
using NodeMask = std::uint64_t;

inline constexpr int kMaxPricingCustomers = 64;

inline NodeMask node_bit(NodeId c) { return NodeMask{1} << (c - 1); }

/// Neighbourhood sets NG_i: the delta customers nearest to i by d_ij,
/// i itself included, ties broken by lower index.
class NgSets {
public:
    NgSets() = default;

    NgSets(const Instance& inst, int delta) : delta_(delta), sets_(static_cast<std::size_t>(inst.n()) + 1, 0) {
        const int n = inst.n();
        if (n > kMaxPricingCustomers) throw InstanceTooLarge("ng-sets limited to n <= 64");
        if (delta < 1) throw InvalidInput("ng neighbourhood size must be at least 1");
        std::vector<NodeId> order(static_cast<std::size_t>(n));
        for (NodeId i = 1; i <= n; ++i) {
            std::iota(order.begin(), order.end(), 1);
            std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
                const Centimiles da = a == i ? -1 : inst.dist(i, a);
                const Centimiles db = b == i ? -1 : inst.dist(i, b);
                return da < db;
            });
            const int keep = std::min(delta, n);
            for (int k = 0; k < keep; ++k) sets_[i] |= node_bit(order[static_cast<std::size_t>(k)]);
        }
    }

    /// Every customer is a neighbour of every other one, so ng-routes are
    /// exactly the elementary routes.
    static NgSets full(const Instance& inst) { return NgSets(inst, std::max(inst.n(), 1)); }

    NodeMask of(NodeId i) const { return sets_[i]; }
    bool contains(NodeId i, NodeId j) const { return (sets_[i] & node_bit(j)) != 0; }
    int delta() const { return delta_; }
    int n() const { return static_cast<int>(sets_.size()) - 1; }

private:
    int delta_ = 0;
    std::vector<NodeMask> sets_;  // index 0 unused
};

/// Direct check of ng-elementarity: every repeated customer must be separated
/// by some customer whose ng-set does not contain it.
inline bool is_ng_feasible(std::span<const NodeId> seq, const NgSets& ng) {
    for (std::size_t a = 0; a < seq.size(); ++a)
        for (std::size_t b = a + 1; b < seq.size(); ++b) {
            if (seq[a] != seq[b]) continue;
            bool separated = false;
            for (std::size_t k = a + 1; k < b && !separated; ++k) separated = !ng.contains(seq[k], seq[a]);
            if (!separated) return false;
        }
    return true;
}

}  // namespace reevrp::pricing
