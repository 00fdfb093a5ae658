#pragma once

#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "reevrp/its/construction.hpp"
#include "reevrp/its/params.hpp"
#include "reevrp/its/perturbation.hpp"
#include "reevrp/its/tabu_search.hpp"

namespace reevrp::its {

struct TraceRow {
    std::int64_t iteration = 0;  // tabu-search runs completed
    Money best_merit = 0;
    bool feasible = false;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct SearchTrace {
    std::vector<TraceRow> rows;

    std::string to_csv() const {
        std::ostringstream out;
        out << "iteration,best_merit_micro_usd,feasible\n";
        for (const auto& r : rows)
            out << r.iteration << ',' << to_micro_usd(r.best_merit) << ',' << (r.feasible ? 1 : 0)
                << '\n';
        return out.str();
    }

    friend bool operator==(const SearchTrace&, const SearchTrace&) = default;
};

struct ItsResult {
    Solution solution;
    Money merit = 0;
    bool feasible = false;
    SearchTrace trace;
    std::int64_t tabu_runs = 0;
    std::int64_t restarts = 0;
    double elapsed_s = 0.0;
};

class NoFeasibleSolutionFound : public Infeasible {
public:
    explicit NoFeasibleSolutionFound(ItsResult r)
        : Infeasible("no feasible solution found"), result(std::move(r)) {}
    ItsResult result;
};

/// Iterated tabu search. Runs until the time limit or the tabu-run budget is
/// spent. Throws NoFeasibleSolutionFound with the best infeasible solution
/// attached when no feasible one was seen.
inline ItsResult solve_its(const Instance& inst, const ItsParams& params) {
    params.validate();
    const auto start = Clock::now();
    const Deadline deadline =
        start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(params.time_limit));
    Rng rng(params.rng_seed);

    ItsResult res;
    bool have_best = false;
    Solution best_feasible;
    Money best_feasible_merit = 0;
    bool have_feasible = false;

    auto done = [&] {
        return expired(deadline) ||
               (params.iteration_limit > 0 && res.tabu_runs >= params.iteration_limit);
    };
    auto record = [&](const TabuResult& tr) {
        ++res.tabu_runs;
        const bool feas = check_feasibility(tr.best, inst).feasible();
        if (!have_best || tr.best_merit < res.merit) {
            res.solution = tr.best;
            res.merit = tr.best_merit;
            have_best = true;
        }
        if (feas && (!have_feasible || tr.best_merit < best_feasible_merit)) {
            best_feasible = tr.best;
            best_feasible_merit = tr.best_merit;
            have_feasible = true;
        }
        res.trace.rows.push_back({res.tabu_runs, res.merit, have_feasible});
    };

    if (inst.n() == 0) {
        res.feasible = true;
        res.trace.rows.push_back({0, 0, true});
        return res;
    }

    do {
        ++res.restarts;
        TabuResult current = tabu_search(inst, construct_solution(inst, params, rng), params, rng, deadline);
        record(current);
        Money reference = current.best_merit;
        int counter = 0;
        while (counter < params.restart && !done()) {
            const PerturbResult pr = perturb_solution(inst, current.best, params, rng);
            current = tabu_search(inst, pr.solution, params, rng, deadline);
            record(current);
            if (current.best_merit < reference) {
                counter = 0;
                reference = current.best_merit;
            } else {
                ++counter;
            }
        }
    } while (!done());

    res.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
    if (have_feasible) {
        res.solution = std::move(best_feasible);
        res.merit = best_feasible_merit;
        res.feasible = true;
        return res;
    }
    res.feasible = false;
    throw NoFeasibleSolutionFound(std::move(res));
}

}  // namespace reevrp::its
