#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "reevrp/pricing/flow.hpp"

namespace reevrp::pricing {

/// Left side minus right side of the rounded capacity inequality of S over
/// the total flow; positive values are violations.
inline Flow rci_violation(const FlowGraph& x, const std::vector<NodeId>& s, const Instance& inst) {
    if (s.empty()) throw InvalidInput("rounded capacity inequality needs a nonempty set");
    std::vector<NodeId> set = s;
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    Flow inside = 0;
    Packages demand = 0;
    for (NodeId i : set) {
        if (!inst.is_customer(i)) throw InvalidInput("rounded capacity set contains a non-customer");
        demand += inst.demand(i);
        for (NodeId j : set)
            if (i != j) inside += x.x(i, j);
    }
    const Packages q = inst.fleet().capacity;
    const auto vehicles = static_cast<Flow>((demand + q - 1) / q);
    return inside - (static_cast<Flow>(set.size()) - vehicles) * kFlowScale;
}

struct ViolatedSet {
    std::vector<NodeId> set;
    Flow violation = 0;
};

/// Heuristic separation: every subset of at most `max_size` customers, plus
/// the connected components of the customer support graph.
inline std::vector<ViolatedSet> separate_rci(const FlowGraph& x, const Instance& inst, int max_size = 4) {
    const int n = inst.n();
    std::set<std::vector<NodeId>> seen;
    std::vector<ViolatedSet> out;
    auto consider = [&](const std::vector<NodeId>& s) {
        if (!seen.insert(s).second) return;
        const Flow v = rci_violation(x, s, inst);
        if (v > 0) out.push_back({s, v});
    };

    std::vector<NodeId> cur;
    auto subsets = [&](auto&& self, NodeId from) -> void {
        if (!cur.empty()) consider(cur);
        if (static_cast<int>(cur.size()) == max_size) return;
        for (NodeId c = from; c <= n; ++c) {
            cur.push_back(c);
            self(self, c + 1);
            cur.pop_back();
        }
    };
    subsets(subsets, 1);

    std::vector<NodeId> parent(static_cast<std::size_t>(n) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](NodeId a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (NodeId i = 1; i <= n; ++i)
        for (NodeId j = 1; j <= n; ++j)
            if (i != j && x.x(i, j) > 0) parent[find(i)] = find(j);
    std::vector<std::vector<NodeId>> comps(static_cast<std::size_t>(n) + 1);
    for (NodeId i = 1; i <= n; ++i) comps[find(i)].push_back(i);
    for (const auto& c : comps)
        if (!c.empty()) consider(c);

    std::stable_sort(out.begin(), out.end(),
                     [](const ViolatedSet& a, const ViolatedSet& b) { return a.violation > b.violation; });
    return out;
}

}  // namespace reevrp::pricing
