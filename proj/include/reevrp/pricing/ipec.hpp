#pragma once

#include <cstdint>
#include <vector>

#include "reevrp/model.hpp"
#include "reevrp/pricing/flow.hpp"

namespace reevrp::pricing {

struct ViolatedPath {
    std::vector<NodeId> customers;  // p = (0, customers..., n+1)
    Flow closure_flow = 0;          // flow on the transitive closure of p
    Centimiles distance = 0;

    /// Amount by which the closure flow exceeds |A_p| - 1.
    Flow violation() const {
        return closure_flow - static_cast<Flow>(customers.size()) * kFlowScale;
    }
};

struct IpecOptions {
    std::uint64_t max_extensions = 1'000'000;
};

struct IpecResult {
    std::vector<ViolatedPath> paths;
    std::uint64_t extensions = 0;
    bool cap_reached = false;
};

/// Flow on the transitive closure of (0, customers..., n+1).
inline Flow closure_flow(const FlowGraph& x, const Instance& inst, const std::vector<NodeId>& customers) {
    Flow total = 0;
    for (const auto& [i, j] : path_incidence(inst, customers).closure) total += x.x(i, j);
    return total;
}

/// Path-growing separation of the infeasible-path elimination rows. Paths
/// grow depth-first from the origin along arcs of positive extender flow and
/// stay elementary; a partial path with m arcs is extended only while its
/// closure flow exceeds m - 1. Completed paths whose closure flow exceeds
/// |A_p| - 1 and that respect the EV range, capacity and duration limits are
/// returned.
inline IpecResult separate_ipec(const FlowGraph& x, const Instance& inst, const IpecOptions& opt = {}) {
    IpecResult res;
    const NodeId end = inst.destination();
    std::vector<NodeId> path{inst.origin()};
    std::vector<char> on_path(static_cast<std::size_t>(inst.num_nodes()), 0);
    on_path[inst.origin()] = 1;

    auto inflow_from_path = [&](NodeId w) {
        Flow f = 0;
        for (NodeId u : path) f += x.x(u, w);
        return f;
    };

    auto grow = [&](auto&& self, Flow closure) -> void {
        const NodeId v = path.back();
        const auto arcs = static_cast<Flow>(path.size() - 1);
        for (NodeId w = 1; w <= end; ++w) {
            if (res.cap_reached) return;
            if (on_path[w] || x.x(v, w) <= 0) continue;
            if (++res.extensions >= opt.max_extensions) res.cap_reached = true;
            const Flow next = closure + inflow_from_path(w);
            if (w == end) {
                if (next <= arcs * kFlowScale) continue;
                std::vector<NodeId> customers(path.begin() + 1, path.end());
                const RouteStats st = compute_stats(inst, customers);
                if (st.distance > inst.fleet().ev_range || st.load > inst.fleet().capacity ||
                    st.duration > inst.fleet().max_duration)
                    continue;
                res.paths.push_back({std::move(customers), next, st.distance});
                continue;
            }
            if (next <= arcs * kFlowScale) continue;
            path.push_back(w);
            on_path[w] = 1;
            self(self, next);
            on_path[w] = 0;
            path.pop_back();
        }
    };
    grow(grow, 0);
    return res;
}

}  // namespace reevrp::pricing
