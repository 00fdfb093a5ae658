#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reevrp/exact/columns.hpp"
#include "reevrp/io.hpp"
#include "reevrp/pricing/incidence.hpp"

namespace reevrp::pricing {

/// Fractional quantities (column weights, arc flows) are fixed-point with
/// nine decimals so that cut violations compare exactly.
using Flow = std::int64_t;
inline constexpr Flow kFlowScale = 1'000'000'000;

inline Flow to_flow(double w) { return static_cast<Flow>(std::llround(w * static_cast<double>(kFlowScale))); }
inline double flow_value(Flow f) { return static_cast<double>(f) / static_cast<double>(kFlowScale); }

/// One entry of a fractional master solution: lambda_{route, subtype} = weight.
struct FractionalColumn {
    std::vector<NodeId> route;
    Subtype subtype = Subtype::C;
    Flow weight = kFlowScale;
};

using FractionalSolution = std::vector<FractionalColumn>;

inline Subtype parse_subtype(const std::string& s) {
    if (s == "E") return Subtype::E;
    if (s == "G") return Subtype::G;
    if (s == "C") return Subtype::C;
    throw InvalidInput("subtype must be \"E\", \"G\" or \"C\"");
}

inline FractionalSolution fractional_from_json(const Json& j, const Instance& inst) {
    if (!j.is_array()) throw InvalidInput("fractional solution must be a JSON array");
    FractionalSolution out;
    for (const Json& e : j) {
        if (!e.is_object()) throw InvalidInput("fractional entry must be an object");
        FractionalColumn col;
        col.route = reevrp::detail::get_field<std::vector<NodeId>>(e, "route");
        if (col.route.empty()) throw InvalidInput("fractional column without customers");
        for (NodeId c : col.route)
            if (!inst.is_customer(c)) throw InvalidInput("fractional column visits a non-customer node");
        col.subtype = parse_subtype(reevrp::detail::get_field<std::string>(e, "subtype"));
        const double w = reevrp::detail::get_field<double>(e, "weight");
        if (!(w > 0.0 && w <= 1.0)) throw InvalidInput("column weight must lie in (0, 1]");
        col.weight = to_flow(w);
        out.push_back(std::move(col));
    }
    return out;
}

inline Json fractional_to_json(const FractionalSolution& sol) {
    Json out = Json::array();
    for (const auto& c : sol)
        out.push_back({{"route", c.route},
                       {"subtype", std::string(1, subtype_code(c.subtype))},
                       {"weight", flow_value(c.weight)}});
    return out;
}

/// Arc flows x_ij = sum of beta_ijr * lambda_rk over the selected subtypes.
class FlowGraph {
public:
    FlowGraph() = default;
    explicit FlowGraph(int num_nodes)
        : v_(num_nodes), x_(static_cast<std::size_t>(num_nodes) * static_cast<std::size_t>(num_nodes), 0) {}

    int num_nodes() const { return v_; }
    Flow x(NodeId i, NodeId j) const { return x_[idx(i, j)]; }
    void add(NodeId i, NodeId j, Flow f) { x_[idx(i, j)] += f; }

    std::vector<Arc> support() const {
        std::vector<Arc> arcs;
        for (NodeId i = 0; i < v_; ++i)
            for (NodeId j = 0; j < v_; ++j)
                if (x(i, j) > 0) arcs.emplace_back(i, j);
        return arcs;
    }

private:
    std::size_t idx(NodeId i, NodeId j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(v_) + static_cast<std::size_t>(j);
    }

    int v_ = 0;
    std::vector<Flow> x_;
};

/// Arc flows of the given columns, optionally restricted to one subtype.
inline FlowGraph column_flow(const FractionalSolution& sol, const Instance& inst,
                             std::optional<Subtype> only = std::nullopt) {
    FlowGraph g(inst.num_nodes());
    for (const auto& c : sol) {
        if (only && c.subtype != *only) continue;
        NodeId prev = inst.origin();
        for (NodeId v : c.route) {
            g.add(prev, v, c.weight);
            prev = v;
        }
        g.add(prev, inst.destination(), c.weight);
    }
    return g;
}

/// Flow of the extender-engaged subtype, the input to path separation.
inline FlowGraph extender_flow(const FractionalSolution& sol, const Instance& inst) {
    return column_flow(sol, inst, Subtype::G);
}

/// Integral column solutions viewed as fractional ones with unit weights.
inline FractionalSolution to_fractional(const exact::ColumnSolution& cols) {
    FractionalSolution out;
    for (const auto& a : cols.assignments) out.push_back({a.column.route.customers, a.subtype, kFlowScale});
    return out;
}

}  // namespace reevrp::pricing
