#pragma once

// Small instance builders for tests. Independent of the harness generator.

#include <cstdint>
#include <random>
#include <vector>

#include "reevrp/instance.hpp"

namespace reevrp::testing {

inline CostModel usd_costs(double c_e, double c_g, double c_0, bool bev = false) {
    auto micro = [](double usd) { return static_cast<Rate>(usd * 1e6 + 0.5); };
    return CostModel{micro(c_e), micro(c_g), micro(c_0), bev};
}

/// Builds an instance from physical-site matrices over 0..n (n+1 sites); the
/// destination depot row/column is duplicated from site 0.
inline Instance from_sites(int n, const std::vector<std::vector<Centimiles>>& d,
                           const std::vector<std::vector<Seconds>>& t, std::vector<Packages> q,
                           std::vector<Seconds> s, FleetParams fleet, CostModel cost) {
    const int v = n + 2;
    auto site = [n](int i) { return i == n + 1 ? 0 : i; };
    std::vector<Centimiles> dist(static_cast<std::size_t>(v * v));
    std::vector<Seconds> time(static_cast<std::size_t>(v * v));
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) {
            dist[static_cast<std::size_t>(i * v + j)] = d[site(i)][site(j)];
            time[static_cast<std::size_t>(i * v + j)] = t[site(i)][site(j)];
        }
    q.insert(q.begin(), 0);
    q.push_back(0);
    s.insert(s.begin(), 0);
    s.push_back(0);
    return Instance(n, std::move(q), std::move(s), std::move(dist), std::move(time), fleet, cost);
}

/// Two customers with d_01 = d_02 = 10 mi, d_12 = 5 mi (symmetric), one
/// package each, Q = 2, generous duration, D_E = 100 mi, costs 0.1/0.2/0.4.
inline Instance two_customer_instance(std::int64_t m_hybrid, std::int64_t m_conv = 2,
                                      Centimiles ev_range = 10000) {
    std::vector<std::vector<Centimiles>> d{{0, 1000, 1000}, {1000, 0, 500}, {1000, 500, 0}};
    std::vector<std::vector<Seconds>> t{{0, 600, 600}, {600, 0, 300}, {600, 300, 0}};
    return from_sites(2, d, t, {1, 1}, {60, 60},
                      FleetParams{m_hybrid, m_conv, 2, 8 * 3600, ev_range},
                      usd_costs(0.1, 0.2, 0.4));
}

struct RandomSpec {
    int n = 6;
    Packages capacity = 6;
    Seconds max_duration = 3 * 3600;
    Centimiles ev_range = 2000;
    std::int64_t m_hybrid = 2;
    std::int64_t m_conventional = 6;
    int area = 1500;          // centimiles, side of the square
    int max_demand = 3;
    bool asymmetric = true;
    bool bev = false;
};

/// Random instance with Manhattan distances on integer coordinates plus a
/// per-site entry surcharge (keeps the triangle inequality, breaks symmetry).
inline Instance random_instance(std::uint64_t seed, const RandomSpec& spec) {
    std::mt19937_64 rng(seed);
    auto uni = [&](std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    const int sites = spec.n + 1;
    std::vector<std::int64_t> x(sites), y(sites), entry(sites, 0);
    for (int i = 0; i < sites; ++i) {
        x[i] = uni(0, spec.area);
        y[i] = uni(0, spec.area);
        if (spec.asymmetric && i > 0) entry[i] = uni(0, spec.area / 10);
    }
    std::vector<std::vector<Centimiles>> d(sites, std::vector<Centimiles>(sites, 0));
    std::vector<std::vector<Seconds>> t(sites, std::vector<Seconds>(sites, 0));
    for (int i = 0; i < sites; ++i)
        for (int j = 0; j < sites; ++j) {
            if (i == j) continue;
            d[i][j] = std::max<Centimiles>(std::abs(x[i] - x[j]) + std::abs(y[i] - y[j]), 1) + entry[j];
            t[i][j] = std::max<Seconds>(d[i][j] * 36 / 30, 1) + (spec.asymmetric ? uni(0, 60) : 0);
        }
    std::vector<Packages> q(spec.n);
    std::vector<Seconds> s(spec.n);
    for (int i = 0; i < spec.n; ++i) {
        q[i] = uni(1, spec.max_demand);
        s[i] = uni(60, 600);
    }
    return from_sites(spec.n, d, t, q, s,
                      FleetParams{spec.m_hybrid, spec.m_conventional, spec.capacity, spec.max_duration,
                                  spec.ev_range},
                      usd_costs(0.11286, 0.219802, 0.373333, spec.bev));
}

}  // namespace reevrp::testing
