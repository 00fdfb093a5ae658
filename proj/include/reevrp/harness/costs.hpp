#pragma once

#include <cmath>

#include "reevrp/instance.hpp"

namespace reevrp::harness {

/// Energy prices and consumption figures behind the per-mile cost rates.
struct CostInputs {
    double electricity_usd_per_kwh = 0.0990;
    double ev_kwh_per_mile = 1.14;
    double cng_usd_per_gge = 2.22;
    double extender_mpge = 10.1;
    double diesel_usd_per_gallon = 3.36;
    double diesel_mpg = 9.0;
};

class CostOrderingViolated : public InvalidInput {
public:
    explicit CostOrderingViolated(const std::string& what) : InvalidInput(what) {}
};

inline Rate usd_per_mile_to_rate(double usd) { return static_cast<Rate>(std::llround(usd * 1e6)); }

inline CostModel derive_costs(const CostInputs& ci, bool bev_mode = false) {
    for (double v : {ci.electricity_usd_per_kwh, ci.ev_kwh_per_mile, ci.cng_usd_per_gge, ci.extender_mpge,
                     ci.diesel_usd_per_gallon, ci.diesel_mpg})
        if (!(v > 0) || !std::isfinite(v)) throw InvalidInput("cost inputs must be positive");
    CostModel m;
    m.c_e = usd_per_mile_to_rate(ci.electricity_usd_per_kwh * ci.ev_kwh_per_mile);
    m.c_g = usd_per_mile_to_rate(ci.cng_usd_per_gge / ci.extender_mpge);
    m.c_0 = usd_per_mile_to_rate(ci.diesel_usd_per_gallon / ci.diesel_mpg);
    m.bev_mode = bev_mode;
    if (!(m.c_e < m.c_g && m.c_g <= m.c_0))
        throw CostOrderingViolated("derived rates must satisfy c_e < c_g <= c_0");
    return m;
}

}  // namespace reevrp::harness
