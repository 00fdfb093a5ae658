#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "reevrp/instance.hpp"
#include "reevrp/model.hpp"

namespace reevrp::its {

enum class Neighborhood : std::uint8_t {
    IntraRelocate,
    IntraExchange,
    IntraTwoOpt,
    InterRelocate,
    InterExchange,
    InterTwoOptStar,
};

inline constexpr int kNeighborhoodCount = 6;

/// Positions index the full path of a route, so 0 is the origin depot and
/// L+1 the destination depot.
///
///   IntraRelocate   move r1[i] to just after original position j
///   IntraExchange   swap r1[i] and r1[j], i < j
///   IntraTwoOpt     reverse r1[i..j], i < j
///   InterRelocate   move r1[i] to just after r2[j]
///   InterExchange   swap r1[i] and r2[j]
///   InterTwoOptStar r1 keeps [0..i] and takes r2's tail after j, and vice versa
///
/// While a vehicle is unused, r2 may also equal route_count(): an empty route
/// that InterRelocate and InterTwoOptStar can open.
struct Move {
    Neighborhood kind = Neighborhood::IntraRelocate;
    std::uint32_t r1 = 0;
    std::uint32_t i = 0;
    std::uint32_t r2 = 0;
    std::uint32_t j = 0;
};

/// Per-route prefix sums over the path 0, v_1..v_L, n+1. Reverse sums hold the
/// cost of traversing a segment backwards, which differs under asymmetric
/// matrices.
struct RouteCache {
    std::vector<NodeId> path;
    std::vector<Centimiles> dist_fwd, dist_bwd;
    std::vector<Seconds> time_fwd, time_bwd;
    std::vector<Seconds> service;  // service[k] = sum of s over path[0..k)
    std::vector<Packages> load;    // load[k] = sum of q over path[0..k)
    std::uint64_t hash = 0;

    std::uint32_t length() const { return static_cast<std::uint32_t>(path.size() - 2); }
};

struct Segment {
    std::uint32_t route;
    std::uint32_t a, b;  // inclusive path positions, a <= b
    bool reversed = false;
};

/// A solution under local search with cached route statistics, per-route
/// merit and the running merit total. Every move is evaluated in O(1).
class SearchState {
public:
    SearchState(const Instance& inst, Solution sol, MeritParams params)
        : inst_(&inst), params_(params), sol_(std::move(sol)) {
        build_cache({}, empty_);
        caches_.resize(sol_.routes.size());
        for (std::size_t f = 0; f < sol_.routes.size(); ++f) rebuild_route(f);
        reassign_types();
    }

    const Instance& instance() const { return *inst_; }
    const MeritParams& merit_params() const { return params_; }
    const Solution& solution() const { return sol_; }
    Money merit() const { return merit_; }
    std::size_t route_count() const { return sol_.routes.size(); }
    std::uint32_t route_length(std::size_t f) const { return cache(f).length(); }

    bool can_open_route() const {
        const auto& fl = inst_->fleet();
        return static_cast<std::int64_t>(sol_.routes.size()) < fl.m_hybrid + fl.m_conventional;
    }
    /// Number of valid r2 values for moves that may open a route.
    std::uint32_t target_count() const {
        return static_cast<std::uint32_t>(caches_.size()) + (can_open_route() ? 1 : 0);
    }

    bool feasible() const {
        const auto& fl = inst_->fleet();
        for (std::size_t f = 0; f < sol_.routes.size(); ++f) {
            const RouteStats& st = sol_.routes[f].stats;
            if (st.load > fl.capacity || st.duration > fl.max_duration) return false;
            if (inst_->cost().bev_mode && sol_.types[f] == VehicleType::Hybrid && st.ev_overflow > 0)
                return false;
        }
        return true;
    }

    /// Merit change if the move were applied under the current vehicle types.
    Money delta(const Move& m) const {
        SegList s1, s2;
        std::size_t n1 = 0, n2 = 0;
        segments(m, s1, n1, s2, n2);
        const std::size_t a = m.r1;
        Money d = route_merit(concat(s1, n1), sol_.types[a], *inst_, params_) - contrib_[a];
        if (is_inter(m.kind)) {
            const std::size_t b = m.r2;
            if (b == caches_.size())
                d += route_merit(concat(s2, n2), new_route_type(), *inst_, params_);
            else
                d += route_merit(concat(s2, n2), sol_.types[b], *inst_, params_) - contrib_[b];
        }
        return d;
    }

    /// Canonical fingerprint of the solution the move leads to, including the
    /// vehicle types that would be assigned afterwards.
    std::uint64_t fingerprint_after(const Move& m) const {
        SegList s1, s2;
        std::size_t n1 = 0, n2 = 0;
        segments(m, s1, n1, s2, n2);
        std::vector<std::uint64_t> hashes;
        std::vector<NodeId> firsts;
        std::vector<RouteStats> stats;
        hashes.reserve(caches_.size());
        auto add = [&](const std::vector<NodeId>& seq, const RouteStats& st) {
            if (seq.empty()) return;
            hashes.push_back(sequence_hash(seq));
            firsts.push_back(seq.front());
            stats.push_back(st);
        };
        for (std::size_t f = 0; f < caches_.size(); ++f) {
            if (f == m.r1) {
                add(materialize(s1, n1), concat(s1, n1));
            } else if (is_inter(m.kind) && f == m.r2) {
                add(materialize(s2, n2), concat(s2, n2));
            } else {
                hashes.push_back(caches_[f].hash);
                firsts.push_back(caches_[f].path[1]);
                stats.push_back(sol_.routes[f].stats);
            }
        }
        if (is_inter(m.kind) && m.r2 == caches_.size()) add(materialize(s2, n2), concat(s2, n2));
        std::vector<VehicleType> types;
        assign_types(stats, *inst_, params_, types);
        return reevrp::fingerprint(hashes, firsts, types);
    }

    std::uint64_t fingerprint() const {
        std::vector<std::uint64_t> hashes;
        std::vector<NodeId> firsts;
        for (const auto& c : caches_) {
            hashes.push_back(c.hash);
            firsts.push_back(c.path[1]);
        }
        return reevrp::fingerprint(hashes, firsts, sol_.types);
    }

    /// Applies the move, drops routes left empty and reassigns vehicle types.
    void apply(const Move& m) {
        SegList s1, s2;
        std::size_t n1 = 0, n2 = 0;
        segments(m, s1, n1, s2, n2);
        std::vector<NodeId> c1 = materialize(s1, n1);
        std::vector<NodeId> c2;
        if (is_inter(m.kind)) c2 = materialize(s2, n2);
        if (is_inter(m.kind) && m.r2 == caches_.size()) {
            sol_.routes.emplace_back();
            sol_.types.push_back(new_route_type());
            caches_.emplace_back();
        }
        sol_.routes[m.r1].customers = std::move(c1);
        rebuild_route(m.r1);
        if (is_inter(m.kind)) {
            sol_.routes[m.r2].customers = std::move(c2);
            rebuild_route(m.r2);
        }
        drop_empty_routes();
        reassign_types();
    }

    static bool is_inter(Neighborhood k) {
        return k == Neighborhood::InterRelocate || k == Neighborhood::InterExchange ||
               k == Neighborhood::InterTwoOptStar;
    }

    /// Whether (r1, i, r2, j) names a non-trivial move of the given kind.
    bool valid(const Move& m) const {
        const auto nr = static_cast<std::uint32_t>(caches_.size());
        if (m.r1 >= nr) return false;
        const std::uint32_t l1 = caches_[m.r1].length();
        switch (m.kind) {
            case Neighborhood::IntraRelocate:
                return m.i >= 1 && m.i <= l1 && m.j <= l1 && m.j != m.i && m.j + 1 != m.i;
            case Neighborhood::IntraExchange:
            case Neighborhood::IntraTwoOpt:
                return m.i >= 1 && m.i < m.j && m.j <= l1;
            default: break;
        }
        const bool opens = m.r2 == nr;
        if (opens && (!can_open_route() || m.kind == Neighborhood::InterExchange)) return false;
        if (m.r2 > nr || m.r2 == m.r1) return false;
        const std::uint32_t l2 = route_length(m.r2);
        switch (m.kind) {
            case Neighborhood::InterRelocate:
                return m.i >= 1 && m.i <= l1 && m.j <= l2;
            case Neighborhood::InterExchange:
                return m.i >= 1 && m.i <= l1 && m.j >= 1 && m.j <= l2;
            case Neighborhood::InterTwoOptStar:
                return m.i <= l1 && m.j <= l2 && !(m.i == 0 && m.j == 0) && !(m.i == l1 && m.j == l2);
            default: return false;
        }
    }

    /// Replaces the solution wholesale (e.g. restoring a snapshot).
    void reset(Solution sol) {
        sol_ = std::move(sol);
        caches_.assign(sol_.routes.size(), {});
        for (std::size_t f = 0; f < sol_.routes.size(); ++f) rebuild_route(f);
        reassign_types();
    }

private:
    using SegList = std::array<Segment, 5>;

    const RouteCache& cache(std::size_t f) const { return f < caches_.size() ? caches_[f] : empty_; }

    VehicleType new_route_type() const {
        return sol_.count(VehicleType::Hybrid) < inst_->fleet().m_hybrid ? VehicleType::Hybrid
                                                                          : VehicleType::Conventional;
    }

    void segments(const Move& m, SegList& s1, std::size_t& n1, SegList& s2, std::size_t& n2) const {
        const std::uint32_t a = m.r1, b = m.r2, i = m.i, j = m.j;
        const std::uint32_t e1 = cache(a).length() + 1;
        n1 = n2 = 0;
        auto push1 = [&](std::uint32_t r, std::uint32_t x, std::uint32_t y, bool rev = false) {
            s1[n1++] = Segment{r, x, y, rev};
        };
        auto push2 = [&](std::uint32_t r, std::uint32_t x, std::uint32_t y, bool rev = false) {
            s2[n2++] = Segment{r, x, y, rev};
        };
        switch (m.kind) {
            case Neighborhood::IntraRelocate:
                if (j < i) {
                    push1(a, 0, j);
                    push1(a, i, i);
                    push1(a, j + 1, i - 1);
                    push1(a, i + 1, e1);
                } else {
                    push1(a, 0, i - 1);
                    push1(a, i + 1, j);
                    push1(a, i, i);
                    push1(a, j + 1, e1);
                }
                break;
            case Neighborhood::IntraExchange:
                push1(a, 0, i - 1);
                push1(a, j, j);
                if (j > i + 1) push1(a, i + 1, j - 1);
                push1(a, i, i);
                push1(a, j + 1, e1);
                break;
            case Neighborhood::IntraTwoOpt:
                push1(a, 0, i - 1);
                push1(a, i, j, true);
                push1(a, j + 1, e1);
                break;
            case Neighborhood::InterRelocate: {
                const std::uint32_t e2 = cache(b).length() + 1;
                push1(a, 0, i - 1);
                push1(a, i + 1, e1);
                push2(b, 0, j);
                push2(a, i, i);
                push2(b, j + 1, e2);
                break;
            }
            case Neighborhood::InterExchange: {
                const std::uint32_t e2 = cache(b).length() + 1;
                push1(a, 0, i - 1);
                push1(b, j, j);
                push1(a, i + 1, e1);
                push2(b, 0, j - 1);
                push2(a, i, i);
                push2(b, j + 1, e2);
                break;
            }
            case Neighborhood::InterTwoOptStar: {
                const std::uint32_t e2 = cache(b).length() + 1;
                push1(a, 0, i);
                push1(b, j + 1, e2);
                push2(b, 0, j);
                push2(a, i + 1, e1);
                break;
            }
        }
    }

    RouteStats concat(const SegList& segs, std::size_t count) const {
        RouteStats st;
        std::size_t nodes = 0;
        NodeId prev = -1;
        for (std::size_t k = 0; k < count; ++k) {
            const Segment& s = segs[k];
            const RouteCache& c = cache(s.route);
            const NodeId first = s.reversed ? c.path[s.b] : c.path[s.a];
            const NodeId last = s.reversed ? c.path[s.a] : c.path[s.b];
            if (prev >= 0) {
                st.distance += inst_->dist(prev, first);
                st.duration += inst_->time(prev, first);
            }
            if (s.reversed) {
                st.distance += c.dist_bwd[s.b] - c.dist_bwd[s.a];
                st.duration += c.time_bwd[s.b] - c.time_bwd[s.a];
            } else {
                st.distance += c.dist_fwd[s.b] - c.dist_fwd[s.a];
                st.duration += c.time_fwd[s.b] - c.time_fwd[s.a];
            }
            st.duration += c.service[s.b + 1] - c.service[s.a];
            st.load += c.load[s.b + 1] - c.load[s.a];
            nodes += s.b - s.a + 1;
            prev = last;
        }
        if (nodes <= 2) return RouteStats{};
        st.ev_overflow = std::max<Centimiles>(st.distance - inst_->fleet().ev_range, 0);
        return st;
    }

    std::vector<NodeId> materialize(const SegList& segs, std::size_t count) const {
        std::vector<NodeId> out;
        for (std::size_t k = 0; k < count; ++k) {
            const Segment& s = segs[k];
            const auto& p = cache(s.route).path;
            if (s.reversed) {
                for (std::uint32_t x = s.b + 1; x-- > s.a;)
                    if (inst_->is_customer(p[x])) out.push_back(p[x]);
            } else {
                for (std::uint32_t x = s.a; x <= s.b; ++x)
                    if (inst_->is_customer(p[x])) out.push_back(p[x]);
            }
        }
        return out;
    }

    void rebuild_route(std::size_t f) {
        Route& r = sol_.routes[f];
        r.stats = build_cache(r.customers, caches_[f]);
    }

    RouteStats build_cache(const std::vector<NodeId>& customers, RouteCache& c) const {
        c.path.assign(1, inst_->origin());
        c.path.insert(c.path.end(), customers.begin(), customers.end());
        c.path.push_back(inst_->destination());
        const std::size_t len = c.path.size();
        c.dist_fwd.assign(len, 0);
        c.dist_bwd.assign(len, 0);
        c.time_fwd.assign(len, 0);
        c.time_bwd.assign(len, 0);
        c.service.assign(len + 1, 0);
        c.load.assign(len + 1, 0);
        for (std::size_t k = 0; k < len; ++k) {
            const NodeId v = c.path[k];
            c.service[k + 1] = c.service[k] + inst_->service_time(v);
            c.load[k + 1] = c.load[k] + inst_->demand(v);
            if (k + 1 < len) {
                const NodeId w = c.path[k + 1];
                c.dist_fwd[k + 1] = c.dist_fwd[k] + inst_->dist(v, w);
                c.dist_bwd[k + 1] = c.dist_bwd[k] + inst_->dist(w, v);
                c.time_fwd[k + 1] = c.time_fwd[k] + inst_->time(v, w);
                c.time_bwd[k + 1] = c.time_bwd[k] + inst_->time(w, v);
            }
        }
        RouteStats st;
        if (!customers.empty()) {
            st.load = c.load[len];
            st.distance = c.dist_fwd[len - 1];
            st.duration = c.time_fwd[len - 1] + c.service[len];
            st.ev_overflow = std::max<Centimiles>(st.distance - inst_->fleet().ev_range, 0);
        }
        c.hash = sequence_hash(customers);
        return st;
    }

    void drop_empty_routes() {
        std::size_t w = 0;
        for (std::size_t f = 0; f < sol_.routes.size(); ++f) {
            if (sol_.routes[f].empty()) continue;
            if (w != f) {
                sol_.routes[w] = std::move(sol_.routes[f]);
                sol_.types[w] = sol_.types[f];
                caches_[w] = std::move(caches_[f]);
            }
            ++w;
        }
        sol_.routes.resize(w);
        sol_.types.resize(w);
        caches_.resize(w);
    }

    void reassign_types() {
        drop_empty_routes();
        assign_types(sol_, *inst_, params_);
        contrib_.resize(sol_.routes.size());
        merit_ = 0;
        for (std::size_t f = 0; f < sol_.routes.size(); ++f) {
            contrib_[f] = route_merit(sol_.routes[f].stats, sol_.types[f], *inst_, params_);
            merit_ += contrib_[f];
        }
    }

    const Instance* inst_;
    MeritParams params_;
    Solution sol_;
    std::vector<RouteCache> caches_;
    RouteCache empty_;
    std::vector<Money> contrib_;
    Money merit_ = 0;
};

}  // namespace reevrp::its
