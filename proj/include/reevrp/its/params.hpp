#pragma once

#include <cstdint>
#include <optional>

#include "reevrp/instance.hpp"
#include "reevrp/model.hpp"

namespace reevrp::its {

struct ItsParams {
    int rcl = 3;
    int tenure = 20;
    int maxiter = 100;
    int restart = 5;
    Centimiles perturb = 0;  // 0 selects 0.6 * max customer-to-customer distance
    double time_limit = 600.0;
    std::int64_t iteration_limit = 0;  // tabu-search runs; 0 means unlimited
    std::uint64_t rng_seed = 1;
    std::optional<MeritParams> merit;  // defaults derived from the instance

    void validate() const {
        if (rcl < 1 || tenure < 1 || maxiter < 1 || restart < 1)
            throw InvalidInput("ITS counts must be at least 1");
        if (perturb < 0) throw InvalidInput("perturbation threshold must be positive");
        if (!(time_limit > 0)) throw InvalidInput("time limit must be positive");
        if (iteration_limit < 0) throw InvalidInput("iteration limit must be nonnegative");
    }
};

inline Centimiles perturb_threshold(const ItsParams& p, const Instance& inst) {
    if (p.perturb > 0) return p.perturb;
    return std::max<Centimiles>(inst.max_customer_distance() * 6 / 10, 1);
}

inline MeritParams merit_params(const ItsParams& p, const Instance& inst) {
    return p.merit ? *p.merit : default_merit_params(inst);
}

}  // namespace reevrp::its
