#pragma once

#include "reevrp/model.hpp"
#include "reevrp/pricing/flow.hpp"

namespace reevrp::pricing {

/// Both sides of the extender-distance inequality: the weighted distance of
/// extender-engaged columns against D_E times their total weight.
struct StrengtheningValue {
    __int128 lhs = 0;  // centimiles x flow units
    __int128 rhs = 0;

    double lhs_miles() const { return static_cast<double>(lhs) / (100.0 * kFlowScale); }
    double rhs_miles() const { return static_cast<double>(rhs) / (100.0 * kFlowScale); }
    bool satisfied() const { return lhs >= rhs; }
};

inline StrengtheningValue strengthening_lhs(const FractionalSolution& sol, const Instance& inst) {
    StrengtheningValue v;
    for (const auto& c : sol) {
        if (c.subtype != Subtype::G) continue;
        const Centimiles d = compute_stats(inst, c.route).distance;
        v.lhs += static_cast<__int128>(d) * c.weight;
        v.rhs += static_cast<__int128>(inst.fleet().ev_range) * c.weight;
    }
    return v;
}

inline StrengtheningValue strengthening_lhs(const exact::ColumnSolution& cols, const Instance& inst) {
    return strengthening_lhs(to_fractional(cols), inst);
}

}  // namespace reevrp::pricing
