#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "reevrp/instance.hpp"

namespace reevrp::pricing {

using Arc = std::pair<NodeId, NodeId>;

/// Visit and traversal counts of a (not necessarily elementary) path from the
/// origin to the destination depot, plus the arcs of its transitive closure.
struct PathIncidence {
    std::vector<int> alpha;       // alpha[i]: visits of node i
    std::map<Arc, int> beta;      // beta[(i, j)]: traversals of arc (i, j)
    std::set<Arc> closure;        // (v_a, v_b) for all positions a < b, self-pairs excluded
    int arc_count = 0;            // |A_p| = l + 1

    int beta_of(NodeId i, NodeId j) const {
        auto it = beta.find({i, j});
        return it == beta.end() ? 0 : it->second;
    }
};

inline PathIncidence path_incidence(const Instance& inst, const std::vector<NodeId>& customers) {
    std::vector<NodeId> path;
    path.reserve(customers.size() + 2);
    path.push_back(inst.origin());
    path.insert(path.end(), customers.begin(), customers.end());
    path.push_back(inst.destination());

    PathIncidence p;
    p.alpha.assign(static_cast<std::size_t>(inst.num_nodes()), 0);
    for (NodeId v : path) ++p.alpha[v];
    for (std::size_t k = 0; k + 1 < path.size(); ++k) ++p.beta[{path[k], path[k + 1]}];
    for (std::size_t a = 0; a < path.size(); ++a)
        for (std::size_t b = a + 1; b < path.size(); ++b)
            if (path[a] != path[b]) p.closure.insert({path[a], path[b]});
    p.arc_count = static_cast<int>(path.size()) - 1;
    return p;
}

}  // namespace reevrp::pricing
