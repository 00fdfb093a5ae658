#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reevrp/types.hpp"

namespace reevrp {

struct FleetParams {
    std::int64_t m_hybrid = 0;
    std::int64_t m_conventional = 0;
    Packages capacity = 0;
    Seconds max_duration = 0;
    Centimiles ev_range = 0;
};

struct CostModel {
    Rate c_e = 0;  // EV mode
    Rate c_g = 0;  // range-extender mode
    Rate c_0 = 0;  // conventional vehicle
    bool bev_mode = false;
};

/// Routing graph with nodes 0 (origin depot), 1..n (customers) and n+1
/// (destination depot, same site as 0). Matrices are dense row-major over
/// all n+2 nodes.
class Instance {
public:
    Instance() = default;

    Instance(int n, std::vector<Packages> demand, std::vector<Seconds> service_time,
             std::vector<Centimiles> dist, std::vector<Seconds> time, FleetParams fleet,
             CostModel cost)
        : n_(n),
          demand_(std::move(demand)),
          service_(std::move(service_time)),
          dist_(std::move(dist)),
          time_(std::move(time)),
          fleet_(fleet),
          cost_(cost) {
        validate();
    }

    int n() const { return n_; }
    int num_nodes() const { return n_ + 2; }
    NodeId origin() const { return 0; }
    NodeId destination() const { return n_ + 1; }
    bool is_customer(NodeId i) const { return i >= 1 && i <= n_; }

    Packages demand(NodeId i) const { return demand_[i]; }
    Seconds service_time(NodeId i) const { return service_[i]; }
    Centimiles dist(NodeId i, NodeId j) const { return dist_[idx(i, j)]; }
    Seconds time(NodeId i, NodeId j) const { return time_[idx(i, j)]; }

    const FleetParams& fleet() const { return fleet_; }
    const CostModel& cost() const { return cost_; }
    FleetParams& mutable_fleet() { return fleet_; }
    CostModel& mutable_cost() { return cost_; }

    const std::vector<Packages>& demands() const { return demand_; }
    const std::vector<Seconds>& service_times() const { return service_; }
    const std::vector<Centimiles>& dist_matrix() const { return dist_; }
    const std::vector<Seconds>& time_matrix() const { return time_; }

    Packages total_demand() const {
        Packages s = 0;
        for (int i = 1; i <= n_; ++i) s += demand_[i];
        return s;
    }

    /// Mean off-diagonal distance between distinct physical sites.
    double mean_distance() const {
        const int m = n_ + 1;
        if (m < 2) return 1.0;
        long double sum = 0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (i != j) sum += dist(i, j);
        return static_cast<double>(sum / (static_cast<long double>(m) * (m - 1)));
    }

    Centimiles max_customer_distance() const {
        Centimiles best = 0;
        for (int i = 1; i <= n_; ++i)
            for (int j = 1; j <= n_; ++j) best = std::max(best, dist(i, j));
        return best;
    }

    /// Throws InvalidInput when any structural invariant is broken. The
    /// triangle inequality is checked separately since it is cubic.
    void validate() const {
        if (n_ < 0) throw InvalidInput("n must be nonnegative");
        const std::size_t v = static_cast<std::size_t>(n_) + 2;
        if (demand_.size() != v) throw InvalidInput("demand must have n+2 entries");
        if (service_.size() != v) throw InvalidInput("service_time_s must have n+2 entries");
        if (dist_.size() != v * v) throw InvalidInput("dist_centimiles must have (n+2)^2 entries");
        if (time_.size() != v * v) throw InvalidInput("time_s must have (n+2)^2 entries");
        const NodeId end = destination();
        if (demand_[0] != 0 || demand_[end] != 0) throw InvalidInput("depot demand must be zero");
        if (service_[0] != 0 || service_[end] != 0) throw InvalidInput("depot service time must be zero");
        for (int i = 1; i <= n_; ++i) {
            if (demand_[i] <= 0) throw InvalidInput("customer demand must be positive");
            if (service_[i] < 0) throw InvalidInput("service time must be nonnegative");
        }
        for (NodeId i = 0; i <= end; ++i) {
            for (NodeId j = 0; j <= end; ++j) {
                const bool depot_pair = (i == 0 || i == end) && (j == 0 || j == end);
                if (i == j || depot_pair) {
                    if (dist(i, j) != 0 || time(i, j) != 0)
                        throw InvalidInput("diagonal and depot-to-depot entries must be zero");
                    continue;
                }
                if (dist(i, j) <= 0 || time(i, j) <= 0)
                    throw InvalidInput("off-diagonal distances and times must be positive");
            }
        }
        for (NodeId j = 0; j <= end; ++j) {
            if (dist(end, j) != dist(0, j) || dist(j, end) != dist(j, 0) ||
                time(end, j) != time(0, j) || time(j, end) != time(j, 0))
                throw InvalidInput("destination depot must duplicate the origin depot row and column");
        }
        if (fleet_.m_hybrid < 0 || fleet_.m_conventional < 0)
            throw InvalidInput("fleet counts must be nonnegative");
        if (fleet_.capacity <= 0) throw InvalidInput("capacity must be positive");
        if (fleet_.max_duration <= 0) throw InvalidInput("max duration must be positive");
        if (fleet_.ev_range < 0) throw InvalidInput("EV range must be nonnegative");
        if (!(cost_.c_e < cost_.c_g && cost_.c_g <= cost_.c_0))
            throw InvalidInput("cost rates must satisfy c_e < c_g <= c_0");
        if (cost_.c_e < 0) throw InvalidInput("cost rates must be nonnegative");
    }

private:
    std::size_t idx(NodeId i, NodeId j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 2) +
               static_cast<std::size_t>(j);
    }

    int n_ = 0;
    std::vector<Packages> demand_{0, 0};
    std::vector<Seconds> service_{0, 0};
    std::vector<Centimiles> dist_{0, 0, 0, 0};
    std::vector<Seconds> time_{0, 0, 0, 0};
    FleetParams fleet_;
    CostModel cost_;
};

struct TriangleViolation {
    NodeId i, j, k;
};

/// Finds i, j, k with d_ij + d_jk < d_ik over the physical sites 0..n.
/// With max_samples == 0 every triple is checked; otherwise that many triples
/// are sampled with the given seed.
inline std::optional<TriangleViolation> find_triangle_violation(const Instance& inst,
                                                                std::uint64_t max_samples = 0,
                                                                std::uint64_t seed = 1) {
    const int m = inst.n() + 1;
    auto check = [&](NodeId i, NodeId j, NodeId k) -> bool {
        return inst.dist(i, j) + inst.dist(j, k) < inst.dist(i, k);
    };
    if (max_samples == 0) {
        for (NodeId i = 0; i < m; ++i)
            for (NodeId j = 0; j < m; ++j)
                for (NodeId k = 0; k < m; ++k)
                    if (check(i, j, k)) return TriangleViolation{i, j, k};
        return std::nullopt;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<NodeId> pick(0, m - 1);
    for (std::uint64_t s = 0; s < max_samples; ++s) {
        NodeId i = pick(rng), j = pick(rng), k = pick(rng);
        if (check(i, j, k)) return TriangleViolation{i, j, k};
    }
    return std::nullopt;
}

}  // namespace reevrp
