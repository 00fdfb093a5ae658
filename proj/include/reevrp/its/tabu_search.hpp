#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <vector>

#include "reevrp/its/params.hpp"
#include "reevrp/its/search_state.hpp"
#include "reevrp/its/tabu_list.hpp"
#include "reevrp/rng.hpp"

namespace reevrp::its {

using Clock = std::chrono::steady_clock;
using Deadline = std::optional<Clock::time_point>;

inline bool expired(const Deadline& d) { return d && Clock::now() >= *d; }

/// Visits the moves of one neighborhood in lexicographic order of
/// (r1, i, r2, j). The visitor returns true to stop the scan.
template <typename Visitor>
void scan_neighborhood(const SearchState& s, Neighborhood kind, Visitor&& visit) {
    const auto nr = static_cast<std::uint32_t>(s.route_count());
    Move m;
    m.kind = kind;
    switch (kind) {
        case Neighborhood::IntraRelocate:
            for (m.r1 = 0; m.r1 < nr; ++m.r1) {
                const std::uint32_t l = s.route_length(m.r1);
                for (m.i = 1; m.i <= l; ++m.i)
                    for (m.j = 0; m.j <= l; ++m.j) {
                        if (m.j == m.i || m.j + 1 == m.i) continue;
                        if (visit(m)) return;
                    }
            }
            return;
        case Neighborhood::IntraExchange:
        case Neighborhood::IntraTwoOpt:
            for (m.r1 = 0; m.r1 < nr; ++m.r1) {
                const std::uint32_t l = s.route_length(m.r1);
                for (m.i = 1; m.i <= l; ++m.i)
                    for (m.j = m.i + 1; m.j <= l; ++m.j)
                        if (visit(m)) return;
            }
            return;
        case Neighborhood::InterRelocate:
            for (m.r1 = 0; m.r1 < nr; ++m.r1) {
                const std::uint32_t l1 = s.route_length(m.r1);
                for (m.i = 1; m.i <= l1; ++m.i)
                    for (m.r2 = 0; m.r2 < s.target_count(); ++m.r2) {
                        if (m.r2 == m.r1) continue;
                        const std::uint32_t l2 = s.route_length(m.r2);
                        for (m.j = 0; m.j <= l2; ++m.j)
                            if (visit(m)) return;
                    }
            }
            return;
        case Neighborhood::InterExchange:
            for (m.r1 = 0; m.r1 < nr; ++m.r1) {
                const std::uint32_t l1 = s.route_length(m.r1);
                for (m.r2 = m.r1 + 1; m.r2 < nr; ++m.r2) {
                    const std::uint32_t l2 = s.route_length(m.r2);
                    for (m.i = 1; m.i <= l1; ++m.i)
                        for (m.j = 1; m.j <= l2; ++m.j)
                            if (visit(m)) return;
                }
            }
            return;
        case Neighborhood::InterTwoOptStar:
            for (m.r1 = 0; m.r1 < nr; ++m.r1) {
                const std::uint32_t l1 = s.route_length(m.r1);
                for (m.r2 = m.r1 + 1; m.r2 < s.target_count(); ++m.r2) {
                    const std::uint32_t l2 = s.route_length(m.r2);
                    for (m.i = 0; m.i <= l1; ++m.i)
                        for (m.j = 0; m.j <= l2; ++m.j) {
                            if ((m.i == 0 && m.j == 0) || (m.i == l1 && m.j == l2)) continue;
                            if (visit(m)) return;
                        }
                }
            }
            return;
    }
}

struct TabuResult {
    Solution best;
    Money best_merit = 0;
    std::int64_t iterations = 0;
};

/// One tabu-search iteration: first admissible improving move of a randomly
/// chosen neighborhood, else the least-worsening admissible move. Returns
/// false when nothing was applied.
inline bool tabu_step(SearchState& state, TabuList& tabu, std::int64_t iteration, Money best_merit,
                      Neighborhood kind) {
    constexpr std::size_t kFallback = 8;
    const Money current = state.merit();
    std::optional<Move> chosen;
    std::vector<std::pair<Money, Move>> fallback;
    scan_neighborhood(state, kind, [&](const Move& m) {
        const Money d = state.delta(m);
        if (d < 0) {
            const std::uint64_t fp = state.fingerprint_after(m);
            if (!tabu.is_tabu(fp, iteration) || current + d < best_merit) {
                chosen = m;
                return true;
            }
            return false;
        }
        if (fallback.size() < kFallback || d < fallback.back().first) {
            auto pos = std::upper_bound(fallback.begin(), fallback.end(), d,
                                        [](Money v, const auto& e) { return v < e.first; });
            fallback.insert(pos, {d, m});
            if (fallback.size() > kFallback) fallback.pop_back();
        }
        return false;
    });
    if (!chosen) {
        for (const auto& [d, m] : fallback) {
            if (!tabu.is_tabu(state.fingerprint_after(m), iteration)) {
                chosen = m;
                break;
            }
        }
    }
    if (!chosen) return false;
    state.apply(*chosen);
    tabu.insert(state.fingerprint(), iteration);
    return true;
}

/// Tabu search from `start`; stops after `maxiter` consecutive iterations
/// without improving the best merit of this run, or at the deadline.
inline TabuResult tabu_search(const Instance& inst, Solution start, const ItsParams& params,
                              Rng& rng, const Deadline& deadline = std::nullopt) {
    SearchState state(inst, std::move(start), merit_params(params, inst));
    TabuList tabu(params.tenure);
    std::int64_t iteration = 0;
    tabu.insert(state.fingerprint(), iteration);
    TabuResult res{state.solution(), state.merit(), 0};
    int idle = 0;
    while (idle < params.maxiter && !expired(deadline)) {
        ++iteration;
        const auto kind = static_cast<Neighborhood>(rng.below(kNeighborhoodCount));
        tabu_step(state, tabu, iteration, res.best_merit, kind);
        if (state.merit() < res.best_merit) {
            res.best_merit = state.merit();
            res.best = state.solution();
            idle = 0;
        } else {
            ++idle;
        }
    }
    res.iterations = iteration;
    return res;
}

}  // namespace reevrp::its
