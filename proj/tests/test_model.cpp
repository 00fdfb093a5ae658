#include <gtest/gtest.h>

#include "oracles/instances.hpp"
#include "reevrp/model.hpp"

using namespace reevrp;
using reevrp::testing::usd_costs;

namespace {

const CostModel kCost = usd_costs(0.1, 0.2, 0.4);

Money usd(double v) { return static_cast<Money>(v * 1e8 + (v >= 0 ? 0.5 : -0.5)); }

// Five customers on a line at 1..5 miles from the depot, one package each.
Instance line_instance(Packages capacity = 10, Seconds max_duration = 10 * 3600) {
    const int n = 5;
    std::vector<std::vector<Centimiles>> d(n + 1, std::vector<Centimiles>(n + 1));
    std::vector<std::vector<Seconds>> t(n + 1, std::vector<Seconds>(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            d[i][j] = 100 * std::abs(i - j);
            t[i][j] = 120 * std::abs(i - j);
        }
    return reevrp::testing::from_sites(n, d, t, {1, 1, 1, 1, 1}, {60, 60, 60, 60, 60},
                                       FleetParams{2, 5, capacity, max_duration, 3300}, kCost);
}

}  // namespace

TEST(RouteCost, ElectricBranch) {
    EXPECT_EQ(route_cost(3000, VehicleType::Hybrid, kCost, 3300), usd(3.0));
}

TEST(RouteCost, ExtenderBranch) {
    EXPECT_EQ(route_cost(5000, VehicleType::Hybrid, kCost, 3300), usd(6.7));
}

TEST(RouteCost, ConventionalBranch) {
    EXPECT_EQ(route_cost(5000, VehicleType::Conventional, kCost, 3300), usd(20.0));
}

TEST(RouteCost, ContinuousAtRange) {
    EXPECT_EQ(route_cost(3300, VehicleType::Hybrid, kCost, 3300), kCost.c_e * 3300);
}

TEST(RouteCost, BevRangeExceededThrows) {
    CostModel bev = kCost;
    bev.bev_mode = true;
    EXPECT_NO_THROW(route_cost(3300, VehicleType::Hybrid, bev, 3300));
    EXPECT_THROW(route_cost(3301, VehicleType::Hybrid, bev, 3300), BevRangeExceeded);
    EXPECT_NO_THROW(route_cost(9999, VehicleType::Conventional, bev, 3300));
}

TEST(MicroUsd, RoundsHalfAwayFromZero) {
    EXPECT_EQ(to_micro_usd(150), 2);
    EXPECT_EQ(to_micro_usd(149), 1);
    EXPECT_EQ(to_micro_usd(-150), -2);
    EXPECT_EQ(to_micro_usd(usd(6.7)), 6700000);
}

TEST(SolutionCost, Examples) {
    const Instance inst = line_instance();
    EXPECT_EQ(solution_cost(Solution{}, inst), 0);

    // Routes (5) and (1): 10 mi and 2 mi out-and-back.
    Solution two_cv;
    two_cv.routes = {make_route(inst, {5}), make_route(inst, {1})};
    two_cv.types = {VehicleType::Conventional, VehicleType::Conventional};
    EXPECT_EQ(solution_cost(two_cv, inst), usd(0.4 * 12));

    Solution mixed = two_cv;
    mixed.types[0] = VehicleType::Hybrid;  // 10 mi <= 33 mi
    EXPECT_EQ(solution_cost(mixed, inst), usd(0.1 * 10 + 0.4 * 2));
}

TEST(Feasibility, CapacityViolationMagnitude) {
    const Instance inst = line_instance(3);
    Solution s;
    s.routes = {make_route(inst, {1, 2, 3, 4, 5})};
    s.types = {VehicleType::Hybrid};
    const auto rep = check_feasibility(s, inst);
    ASSERT_EQ(rep.routes.size(), 1u);
    EXPECT_EQ(rep.routes[0].capacity_excess, 2);
    EXPECT_TRUE(rep.partition_ok());
    EXPECT_FALSE(rep.feasible());
}

TEST(Feasibility, RepeatedCustomer) {
    const Instance inst = line_instance();
    Solution s;
    s.routes = {make_route(inst, {1, 3, 2, 3, 4, 5})};
    s.types = {VehicleType::Hybrid};
    const auto rep = check_feasibility(s, inst);
    ASSERT_EQ(rep.routes.size(), 1u);
    EXPECT_EQ(rep.routes[0].repeated, std::vector<NodeId>{3});
}

TEST(Feasibility, MissingCustomer) {
    const Instance inst = line_instance();
    Solution s;
    s.routes = {make_route(inst, {1, 2, 3, 4})};
    s.types = {VehicleType::Conventional};
    const auto rep = check_feasibility(s, inst);
    EXPECT_EQ(rep.missing, std::vector<NodeId>{5});
    EXPECT_TRUE(rep.routes_ok());
}

TEST(Feasibility, DuplicatedAcrossRoutesAndFleet) {
    const Instance inst = line_instance();
    Solution s;
    s.routes = {make_route(inst, {1, 2, 3}), make_route(inst, {3, 4}), make_route(inst, {5})};
    s.types = {VehicleType::Hybrid, VehicleType::Hybrid, VehicleType::Hybrid};
    const auto rep = check_feasibility(s, inst);
    EXPECT_EQ(rep.duplicated, std::vector<NodeId>{3});
    EXPECT_EQ(rep.hybrid_excess, 1);
}

TEST(Feasibility, DurationAndBevRange) {
    Instance inst = line_instance(10, 1000);
    inst.mutable_cost().bev_mode = true;
    inst.mutable_fleet().ev_range = 500;
    Solution s;
    s.routes = {make_route(inst, {5})};
    s.types = {VehicleType::Hybrid};
    const auto rep = check_feasibility(s, inst);
    ASSERT_EQ(rep.routes.size(), 1u);
    // 5 mi out and back at 120 s/mi plus 60 s service.
    EXPECT_EQ(rep.routes[0].duration_excess, 1260 - 1000);
    EXPECT_EQ(rep.routes[0].bev_range_excess, 500);
}

TEST(Merit, ExamplesFromPenaltyWeights) {
    const Instance inst = line_instance(3, 3600);
    MeritParams p{usd(1000), usd(500), 1};
    Solution s;
    s.routes = {make_route(inst, {1, 2, 3, 4, 5})};  // load 5 > 3
    s.types = {VehicleType::Conventional};
    const Money cost = solution_cost(s, inst);
    EXPECT_EQ(merit(s, inst, p), cost + 2 * usd(1000));

    const Instance tight = line_instance(10, 1200);
    Solution t;
    t.routes = {make_route(tight, {1, 2, 3, 4, 5})};
    t.types = {VehicleType::Conventional};
    const Seconds tau = t.routes[0].stats.duration;
    ASSERT_EQ(tau, 1200 + 5 * 60);
    EXPECT_EQ(merit(t, tight, p), solution_cost(t, tight) + usd(500) * (tau - 1200) / 3600);
}

TEST(Merit, HourOfExcessCostsPhiT) {
    EXPECT_EQ(duration_penalty(3600, MeritParams{1, usd(500), 1}), usd(500));
    EXPECT_EQ(duration_penalty(0, MeritParams{1, usd(500), 1}), 0);
}

TEST(Merit, EqualsCostWhenFeasible) {
    const Instance inst = line_instance();
    Solution s;
    s.routes = {make_route(inst, {1, 2}), make_route(inst, {3, 4, 5})};
    s.types = {VehicleType::Conventional, VehicleType::Hybrid};
    ASSERT_TRUE(check_feasibility(s, inst).feasible());
    EXPECT_EQ(merit(s, inst, default_merit_params(inst)), solution_cost(s, inst));
}

TEST(Metrics, ModeBreakdown) {
    Instance inst = line_instance();
    inst.mutable_fleet().ev_range = 300;
    Solution s;
    s.routes = {make_route(inst, {1, 2}), make_route(inst, {3, 4, 5})};
    s.types = {VehicleType::Conventional, VehicleType::Hybrid};
    const auto m = metrics(s, inst);
    EXPECT_EQ(m.vmt, 400 + 1000);
    EXPECT_EQ(m.cv_miles, 400);
    EXPECT_EQ(m.ev_miles, 300);
    EXPECT_EQ(m.extender_miles, 700);
    EXPECT_EQ(m.ev_miles + m.extender_miles + m.cv_miles, m.vmt);
    EXPECT_EQ(m.vht, s.routes[0].stats.duration + s.routes[1].stats.duration);
    EXPECT_EQ(m.hybrid_vehicles, 1);
    EXPECT_EQ(m.conventional_vehicles, 1);
    EXPECT_DOUBLE_EQ(m.capacity_utilization, 5.0 / 20.0);
}

TEST(Metrics, AllConventionalHasNoElectricMiles) {
    const Instance inst = line_instance();
    Solution s;
    s.routes = {make_route(inst, {1, 2, 3, 4, 5})};
    s.types = {VehicleType::Conventional};
    const auto m = metrics(s, inst);
    EXPECT_EQ(m.ev_miles, 0);
    EXPECT_EQ(m.extender_miles, 0);
}

TEST(Metrics, RejectsInfeasible) {
    const Instance inst = line_instance();
    Solution s;
    s.routes = {make_route(inst, {1})};
    s.types = {VehicleType::Conventional};
    EXPECT_THROW(metrics(s, inst), Infeasible);
}

TEST(Instance, RejectsBadCostOrdering) {
    std::vector<std::vector<Centimiles>> d{{0, 100}, {100, 0}};
    std::vector<std::vector<Seconds>> t{{0, 60}, {60, 0}};
    EXPECT_THROW(reevrp::testing::from_sites(1, d, t, {1}, {0}, FleetParams{1, 1, 1, 3600, 0},
                                             usd_costs(0.3, 0.2, 0.4)),
                 InvalidInput);
    EXPECT_THROW(reevrp::testing::from_sites(1, d, t, {0}, {0}, FleetParams{1, 1, 1, 3600, 0},
                                             usd_costs(0.1, 0.2, 0.4)),
                 InvalidInput);
}

TEST(Instance, TriangleCheck) {
    std::vector<std::vector<Centimiles>> d{{0, 100, 100}, {100, 0, 500}, {100, 500, 0}};
    std::vector<std::vector<Seconds>> t{{0, 60, 60}, {60, 0, 60}, {60, 60, 0}};
    const Instance bad = reevrp::testing::from_sites(2, d, t, {1, 1}, {0, 0},
                                                     FleetParams{1, 1, 2, 3600, 0}, kCost);
    EXPECT_TRUE(find_triangle_violation(bad).has_value());
    EXPECT_FALSE(find_triangle_violation(line_instance()).has_value());
}

TEST(TypeAssignment, PrefersLongRoutesForHybrids) {
    Instance inst = line_instance();
    inst.mutable_fleet().m_hybrid = 1;
    Solution s;
    s.routes = {make_route(inst, {1}), make_route(inst, {5})};
    s.types = {VehicleType::Hybrid, VehicleType::Conventional};
    ASSERT_TRUE(assign_types(s, inst, default_merit_params(inst)));
    EXPECT_EQ(s.types[0], VehicleType::Conventional);
    EXPECT_EQ(s.types[1], VehicleType::Hybrid);
}

TEST(TypeAssignment, NoPairwiseSwapImproves) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        reevrp::testing::RandomSpec spec;
        spec.n = 8;
        spec.m_hybrid = static_cast<std::int64_t>(seed % 4);
        spec.m_conventional = 8;
        const Instance inst = reevrp::testing::random_instance(seed, spec);
        Solution s;
        for (NodeId c = 1; c <= inst.n(); c += 2) {
            std::vector<NodeId> seq{c};
            if (c + 1 <= inst.n()) seq.push_back(c + 1);
            s.routes.push_back(make_route(inst, seq));
        }
        const auto p = default_merit_params(inst);
        ASSERT_TRUE(assign_types(s, inst, p));
        const Money base = merit(s, inst, p);
        for (std::size_t a = 0; a < s.size(); ++a) {
            Solution flip = s;
            flip.types[a] = flip.types[a] == VehicleType::Hybrid ? VehicleType::Conventional
                                                                 : VehicleType::Hybrid;
            if (check_feasibility(flip, inst).fleet_ok()) {
                EXPECT_GE(merit(flip, inst, p), base);
            }
            for (std::size_t b = a + 1; b < s.size(); ++b) {
                Solution swap = s;
                std::swap(swap.types[a], swap.types[b]);
                EXPECT_GE(merit(swap, inst, p), base);
            }
        }
    }
}

TEST(Fingerprint, IgnoresRouteOrder) {
    const Instance inst = line_instance();
    Solution a;
    a.routes = {make_route(inst, {1, 2}), make_route(inst, {3, 4, 5})};
    a.types = {VehicleType::Conventional, VehicleType::Hybrid};
    Solution b;
    b.routes = {a.routes[1], a.routes[0]};
    b.types = {a.types[1], a.types[0]};
    EXPECT_EQ(fingerprint(a), fingerprint(b));
    b.types = {VehicleType::Conventional, VehicleType::Hybrid};
    EXPECT_NE(fingerprint(a), fingerprint(b));
    Solution c = a;
    c.routes[0] = make_route(inst, {2, 1});
    EXPECT_NE(fingerprint(a), fingerprint(c));
}
