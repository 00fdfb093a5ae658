#include <gtest/gtest.h>

#include <set>

#include "oracles/instances.hpp"
#include "reevrp/exact/set_partition.hpp"
#include "reevrp/its/solver.hpp"

using namespace reevrp;
using namespace reevrp::its;
namespace rt = reevrp::testing;

namespace {

void expect_partition_and_fleet(const Solution& s, const Instance& inst) {
    const auto rep = check_feasibility(s, inst);
    EXPECT_TRUE(rep.partition_ok());
    EXPECT_TRUE(rep.fleet_ok());
    EXPECT_FALSE(rep.shape_mismatch);
    for (const auto& v : rep.routes) {
        EXPECT_FALSE(v.empty);
        EXPECT_TRUE(v.repeated.empty());
    }
}

Instance medium_instance(std::uint64_t seed, int n) {
    rt::RandomSpec spec;
    spec.n = n;
    spec.capacity = 12;
    spec.max_duration = 4 * 3600;
    spec.m_hybrid = n / 8 + 1;
    spec.m_conventional = n;
    spec.area = 3000;
    spec.ev_range = 4000;
    return rt::random_instance(seed, spec);
}

Move random_move(const SearchState& s, Rng& rng) {
    while (true) {
        Move m;
        m.kind = static_cast<Neighborhood>(rng.below(kNeighborhoodCount));
        const auto nr = s.route_count();
        m.r1 = static_cast<std::uint32_t>(rng.below(nr));
        m.r2 = static_cast<std::uint32_t>(rng.below(s.target_count()));
        m.i = static_cast<std::uint32_t>(rng.below(s.route_length(m.r1) + 2));
        m.j = static_cast<std::uint32_t>(rng.below(s.route_length(m.r2) + 2));
        if (!SearchState::is_inter(m.kind)) m.j = static_cast<std::uint32_t>(rng.below(s.route_length(m.r1) + 2));
        if (s.valid(m)) return m;
    }
}

}  // namespace

TEST(Construction, TwoCustomersShareOneHybrid) {
    const Instance inst = rt::two_customer_instance(1);
    Rng rng(3);
    const Solution s = construct_solution(inst, ItsParams{}, rng);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.types[0], VehicleType::Hybrid);
    EXPECT_EQ(s.routes[0].customers.size(), 2u);
    expect_partition_and_fleet(s, inst);
}

TEST(Construction, NoHybridsMeansAllConventional) {
    const Instance inst = medium_instance(5, 30);
    Instance no_h = inst;
    no_h.mutable_fleet().m_hybrid = 0;
    Rng rng(1);
    const Solution s = construct_solution(no_h, ItsParams{}, rng);
    EXPECT_EQ(s.count(VehicleType::Hybrid), 0);
    expect_partition_and_fleet(s, no_h);
}

TEST(Construction, DeterministicForSeed) {
    const Instance inst = medium_instance(9, 50);
    ItsParams p;
    Rng a(42), b(42);
    EXPECT_EQ(fingerprint(construct_solution(inst, p, a)), fingerprint(construct_solution(inst, p, b)));
}

TEST(Construction, TightFleetStillPartitions) {
    rt::RandomSpec spec;
    spec.n = 20;
    spec.capacity = 4;
    spec.m_hybrid = 1;
    spec.m_conventional = 1;
    const Instance inst = rt::random_instance(2, spec);
    Rng rng(7);
    const Solution s = construct_solution(inst, ItsParams{}, rng);
    expect_partition_and_fleet(s, inst);
    EXPECT_LE(s.size(), 2u);
}

TEST(Construction, EmptyFleetIsInfeasible) {
    Instance inst = rt::two_customer_instance(0, 0);
    Rng rng(1);
    EXPECT_THROW(construct_solution(inst, ItsParams{}, rng), Infeasible);
}

TEST(TabuList, TenureWindow) {
    TabuList t(3);
    t.insert(77, 10);
    EXPECT_FALSE(t.is_tabu(77, 10));
    for (std::int64_t it = 11; it <= 13; ++it) EXPECT_TRUE(t.is_tabu(77, it));
    EXPECT_FALSE(t.is_tabu(77, 14));
    EXPECT_FALSE(t.is_tabu(78, 11));
    t.insert(1, 20);
    EXPECT_EQ(t.size(), 1u);
}

TEST(TabuSearch, MergesTwoSingletonRoutes) {
    const Instance inst = rt::two_customer_instance(0, 2);
    Solution start;
    start.routes = {make_route(inst, {1}), make_route(inst, {2})};
    start.types = {VehicleType::Conventional, VehicleType::Conventional};
    Rng rng(1);
    ItsParams p;
    p.maxiter = 20;
    const TabuResult r = tabu_search(inst, start, p, rng);
    ASSERT_EQ(r.best.size(), 1u);
    EXPECT_EQ(r.best.routes[0].stats.distance, 2500);
    EXPECT_EQ(r.best_merit, solution_cost(r.best, inst));
}

TEST(TabuSearch, LocalOptimumReturnedUnchanged) {
    rt::RandomSpec spec;
    spec.n = 6;
    const Instance inst = rt::random_instance(17, spec);
    const auto opt = exact::solve_exact(inst);
    Rng rng(1);
    ItsParams p;
    p.maxiter = 1;
    const TabuResult r = tabu_search(inst, opt.solution, p, rng);
    EXPECT_EQ(r.best_merit, opt.objective);
    EXPECT_EQ(fingerprint(r.best), fingerprint([&] {
                  Solution s = opt.solution;
                  assign_types(s, inst, default_merit_params(inst));
                  return s;
              }()));
}

TEST(TabuSearch, ScanMatchesValidMoves) {
    const Instance inst = medium_instance(3, 12);
    Rng rng(5);
    const Solution s = construct_solution(inst, ItsParams{}, rng);
    SearchState st(inst, s, default_merit_params(inst));
    for (int k = 0; k < kNeighborhoodCount; ++k) {
        std::size_t visited = 0;
        scan_neighborhood(st, static_cast<Neighborhood>(k), [&](const Move& m) {
            EXPECT_TRUE(st.valid(m));
            ++visited;
            return false;
        });
        EXPECT_GT(visited, 0u);
    }
}

TEST(TabuSearch, AcceptedFingerprintIsRejectedWithinTenure) {
    const Instance inst = medium_instance(21, 25);
    Rng rng(9);
    SearchState st(inst, construct_solution(inst, ItsParams{}, rng), default_merit_params(inst));
    TabuList tabu(5);
    std::vector<std::uint64_t> history{st.fingerprint()};
    tabu.insert(history.back(), 0);
    const Money aspiration = std::numeric_limits<Money>::min();  // never passes
    for (std::int64_t it = 1; it <= 40; ++it) {
        const auto kind = static_cast<Neighborhood>(rng.below(kNeighborhoodCount));
        const bool applied = tabu_step(st, tabu, it, aspiration, kind);
        if (!applied) continue;
        const std::uint64_t fp = st.fingerprint();
        history.push_back(fp);
        EXPECT_FALSE(tabu.is_tabu(fp, it));
        EXPECT_TRUE(tabu.is_tabu(fp, it + 1));
        EXPECT_TRUE(tabu.is_tabu(fp, it + 5));
    }
}

TEST(SearchState, RelocateOpensRouteOnlyWithSpareVehicle) {
    const Instance inst = rt::two_customer_instance(1, 1);
    Solution one;
    one.routes.push_back(make_route(inst, {1, 2}));
    one.types.push_back(VehicleType::Hybrid);
    SearchState st(inst, one, default_merit_params(inst));
    ASSERT_EQ(st.target_count(), 2u);
    const Move open{Neighborhood::InterRelocate, 0, 2, 1, 0};
    ASSERT_TRUE(st.valid(open));
    EXPECT_FALSE(st.valid(Move{Neighborhood::InterExchange, 0, 1, 1, 0}));
    const Money predicted = st.merit() + st.delta(open);
    const std::uint64_t fp = st.fingerprint_after(open);
    st.apply(open);
    ASSERT_EQ(st.route_count(), 2u);
    EXPECT_EQ(st.solution().routes[1].customers, std::vector<NodeId>{2});
    EXPECT_EQ(st.fingerprint(), fp);
    EXPECT_EQ(st.merit(), merit(st.solution(), inst, default_merit_params(inst)));
    EXPECT_LE(st.merit(), predicted);

    const Instance tight = rt::two_customer_instance(1, 0);
    SearchState full(tight, one, default_merit_params(tight));
    EXPECT_EQ(full.target_count(), 1u);
    EXPECT_FALSE(full.valid(open));
}

TEST(SearchState, IncrementalMatchesRecomputation) {
    Rng rng(2024);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const Instance inst = medium_instance(seed, 40);
        const MeritParams mp = default_merit_params(inst);
        Rng build(seed);
        SearchState st(inst, construct_solution(inst, ItsParams{}, build), mp);
        for (int step = 0; step < 1500 && st.route_count() > 1; ++step) {
            const Move m = random_move(st, rng);
            const Money predicted = st.merit() + st.delta(m);
            const std::uint64_t fp_pred = st.fingerprint_after(m);
            const auto types_before = st.solution().types;
            const auto routes_before = st.route_count();
            st.apply(m);
            const Solution& s = st.solution();
            for (const Route& r : s.routes) ASSERT_EQ(r.stats, compute_stats(inst, r.customers));
            ASSERT_EQ(st.merit(), merit(s, inst, mp));
            ASSERT_EQ(st.fingerprint(), fingerprint(s));
            ASSERT_EQ(st.fingerprint(), fp_pred);
            if (routes_before == s.size() && types_before == s.types) {
                ASSERT_EQ(st.merit(), predicted);
            }
            ASSERT_LE(st.merit(), predicted);
            expect_partition_and_fleet(s, inst);
        }
    }
}

TEST(Perturbation, SingleRouteIsRebuilt) {
    const Instance inst = rt::two_customer_instance(1);
    Solution s;
    s.routes = {make_route(inst, {2, 1})};
    s.types = {VehicleType::Hybrid};
    Rng rng(1);
    const auto r = perturb_solution(inst, s, ItsParams{}, rng);
    EXPECT_TRUE(r.single_route);
    EXPECT_EQ(r.removed, std::vector<std::size_t>{0});
    expect_partition_and_fleet(r.solution, inst);
}

namespace {

// Customers 1,2 near (0, 10 mi), 3,4 near (10 mi, 0), 5,6 near (-10 mi, 0);
// Manhattan distances in centimiles.
Instance three_cluster_instance() {
    const std::vector<std::pair<int, int>> xy{{0, 0},      {0, 1000},  {100, 1000}, {1000, 0},
                                              {1000, 100}, {-1000, 0}, {-1000, 100}};
    const int n = 6;
    std::vector<std::vector<Centimiles>> d(n + 1, std::vector<Centimiles>(n + 1, 0));
    std::vector<std::vector<Seconds>> t(n + 1, std::vector<Seconds>(n + 1, 0));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (i != j) {
                d[i][j] = std::abs(xy[i].first - xy[j].first) + std::abs(xy[i].second - xy[j].second);
                t[i][j] = d[i][j];
            }
    return rt::from_sites(n, d, t, {1, 1, 3, 3, 3, 3}, {60, 60, 60, 60, 60, 60},
                          FleetParams{0, 6, 10, 10 * 3600, 0}, rt::usd_costs(0.1, 0.2, 0.4));
}

}  // namespace

TEST(Perturbation, FallbackRemovesNearestRoute) {
    const Instance inst = three_cluster_instance();
    Solution s;
    // Routes 0 and 3 carry one package each; route 3 is slightly longer.
    s.routes = {make_route(inst, {1}), make_route(inst, {3, 4}), make_route(inst, {5, 6}),
                make_route(inst, {2})};
    s.types.assign(4, VehicleType::Conventional);
    const MeritParams mp = default_merit_params(inst);
    const std::size_t r = max_ratio_route(s, inst, mp);
    EXPECT_EQ(r, 3u);
    // Gaps from route 3 ({2} at (100,1000)): to {1} = 100, to {3,4} = 1900, to {5,6} = 2100.
    EXPECT_EQ(route_gap(inst, s.routes[3], s.routes[0]), 100);
    EXPECT_EQ(route_gap(inst, s.routes[3], s.routes[1]), 1900);
    EXPECT_EQ(route_gap(inst, s.routes[3], s.routes[2]), 2100);
    EXPECT_EQ(perturbation_targets(s, inst, 1, mp), (std::vector<std::size_t>{0, 3}));
    EXPECT_EQ(perturbation_targets(s, inst, 2000, mp), (std::vector<std::size_t>{0, 1, 3}));
    EXPECT_EQ(perturbation_targets(s, inst, 5000, mp), (std::vector<std::size_t>{0, 1, 2, 3}));
    Rng rng(4);
    ItsParams p;
    p.perturb = 1;
    const auto out = perturb_solution(inst, s, p, rng);
    expect_partition_and_fleet(out.solution, inst);
}

TEST(Perturbation, TiesGoToLowestIndex) {
    const Instance inst = three_cluster_instance();
    Solution s;
    s.routes = {make_route(inst, {3}), make_route(inst, {5})};  // identical ratio by symmetry
    s.types.assign(2, VehicleType::Conventional);
    EXPECT_EQ(max_ratio_route(s, inst, default_merit_params(inst)), 0u);
}

TEST(SolveIts, SingleCustomerUsesHybrid) {
    std::vector<std::vector<Centimiles>> d{{0, 700}, {700, 0}};
    std::vector<std::vector<Seconds>> t{{0, 600}, {600, 0}};
    const Instance inst = rt::from_sites(1, d, t, {1}, {30}, FleetParams{1, 1, 5, 3600, 3300},
                                         rt::usd_costs(0.1, 0.2, 0.4));
    ItsParams p;
    p.iteration_limit = 3;
    const auto r = solve_its(inst, p);
    ASSERT_EQ(r.solution.size(), 1u);
    EXPECT_EQ(r.solution.types[0], VehicleType::Hybrid);
    EXPECT_EQ(r.solution.routes[0].customers, std::vector<NodeId>{1});
}

TEST(SolveIts, DeterministicTraceAndMonotoneIncumbent) {
    const Instance inst = medium_instance(8, 30);
    ItsParams p;
    p.iteration_limit = 12;
    p.time_limit = 1e6;
    p.rng_seed = 99;
    const auto a = solve_its(inst, p);
    const auto b = solve_its(inst, p);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.trace.to_csv(), b.trace.to_csv());
    EXPECT_EQ(fingerprint(a.solution), fingerprint(b.solution));
    ASSERT_EQ(a.trace.rows.size(), 12u);
    for (std::size_t k = 1; k < a.trace.rows.size(); ++k)
        EXPECT_LE(a.trace.rows[k].best_merit, a.trace.rows[k - 1].best_merit);
    EXPECT_TRUE(check_feasibility(a.solution, inst).feasible());
    EXPECT_EQ(a.merit, solution_cost(a.solution, inst));
}

TEST(SolveIts, MatchesOptimumOnSmallInstance) {
    rt::RandomSpec spec;
    spec.n = 7;
    const Instance inst = rt::random_instance(31, spec);
    const auto opt = exact::solve_exact(inst);
    ItsParams p;
    p.iteration_limit = 30;
    p.time_limit = 1e6;
    const auto r = solve_its(inst, p);
    EXPECT_EQ(solution_cost(r.solution, inst), opt.objective);
}

TEST(SolveIts, ReportsInfeasibleWithBestAttached) {
    rt::RandomSpec spec;
    spec.n = 6;
    spec.capacity = 3;
    spec.m_hybrid = 1;
    spec.m_conventional = 0;
    const Instance inst = rt::random_instance(4, spec);
    ItsParams p;
    p.iteration_limit = 3;
    try {
        solve_its(inst, p);
        FAIL() << "expected NoFeasibleSolutionFound";
    } catch (const NoFeasibleSolutionFound& e) {
        EXPECT_FALSE(e.result.feasible);
        EXPECT_EQ(e.result.solution.size(), 1u);
        EXPECT_TRUE(check_feasibility(e.result.solution, inst).partition_ok());
    }
}

TEST(SolveIts, TraceCsvHeader) {
    const Instance inst = rt::two_customer_instance(1);
    ItsParams p;
    p.iteration_limit = 2;
    const auto r = solve_its(inst, p);
    EXPECT_EQ(r.trace.to_csv().rfind("iteration,best_merit_micro_usd,feasible\n", 0), 0u);
}
