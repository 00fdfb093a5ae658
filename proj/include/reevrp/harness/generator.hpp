#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "reevrp/harness/costs.hpp"
#include "reevrp/harness/held_karp.hpp"
#include "reevrp/instance.hpp"
#include "reevrp/rng.hpp"

namespace reevrp::harness {

struct Point {
    Centimiles x = 0;
    Centimiles y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

inline Centimiles manhattan(Point a, Point b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

struct CustomerPoint {
    Point at;
    Packages packages = 1;
};

class ClusterTooLarge : public InvalidInput {
public:
    explicit ClusterTooLarge(const std::string& what) : InvalidInput(what) {}
};

/// Synthetic delivery region: a square of street-grid blocks, customers on
/// the streets, square aggregation cells whose centers are grid
/// intersections, and a two-tier speed model (slow within a cell, a concave
/// local/arterial profile between cells).
struct GeneratorConfig {
    int n_superlocations = 0;  // target node count; 0 draws exactly n_customers customers
    int n_customers = 200;
    double area_miles = 0.0;  // square side; 0 sizes the region from the target
    std::optional<Point> depot;  // defaults to the grid intersection nearest the center
    double grid_pitch_miles = 0.25;
    double cell_miles = 0.5;
    std::uint64_t rng_seed = 1;
    int intra_speed_mph = 15;
    double sigma_minutes = 4.0;
    int local_speed_mph = 20;
    int arterial_speed_mph = 40;
    double arterial_access_miles = 1.0;  // trip length covered at local speed
    int max_cluster = 12;

    std::int64_t m_hybrid = 25;
    std::int64_t m_conventional = 0;  // 0 means one per node
    Packages capacity = 120;
    double max_duration_hours = 10.0;
    double ev_range_miles = 33.0;
    CostInputs costs;
    bool bev = false;

    Centimiles pitch() const { return to_cm(grid_pitch_miles); }
    Centimiles cell() const { return to_cm(cell_miles); }
    Seconds sigma() const { return static_cast<Seconds>(std::llround(sigma_minutes * 60.0)); }

    int cells_per_side() const {
        if (area_miles > 0) return static_cast<int>(std::ceil(area_miles / cell_miles - 1e-9));
        const double target = n_superlocations > 0 ? n_superlocations : n_customers;
        return std::max(1, static_cast<int>(std::ceil(std::sqrt(target * 1.25))));
    }
    Centimiles side() const { return cell() * cells_per_side(); }

    void validate() const {
        if (n_superlocations < 0 || n_customers < 0) throw InvalidInput("counts must be nonnegative");
        if (pitch() <= 0 || cell() <= 0) throw InvalidInput("grid pitch and cell size must be positive");
        if (cell() % (2 * pitch()) != 0)
            throw InvalidInput("cell size must be an even multiple of the grid pitch");
        if (area_miles < 0) throw InvalidInput("area must be nonnegative");
        if (intra_speed_mph <= 0 || local_speed_mph <= 0 || arterial_speed_mph < local_speed_mph)
            throw InvalidInput("speeds must be positive with arterial >= local");
        if (arterial_access_miles < 0) throw InvalidInput("arterial access distance must be nonnegative");
        if (sigma_minutes < 0) throw InvalidInput("sigma must be nonnegative");
        if (max_cluster < 1 || max_cluster > 12) throw InvalidInput("max cluster size must be in 1..12");
        if (m_hybrid < 0 || m_conventional < 0 || capacity <= 0 || !(max_duration_hours > 0) ||
            ev_range_miles < 0)
            throw InvalidInput("fleet parameters out of range");
    }

    /// Checks that the region can host the requested draw.
    void validate_draw() const {
        validate();
        const std::int64_t cells = static_cast<std::int64_t>(cells_per_side()) * cells_per_side();
        if (n_superlocations > cells) throw InvalidInput("region has fewer cells than requested nodes");
        if (n_superlocations == 0 && n_customers > cells * max_cluster)
            throw InvalidInput("region cannot hold that many customers");
    }

    static Centimiles to_cm(double miles) { return static_cast<Centimiles>(std::llround(miles * 100.0)); }
};

/// Travel seconds over `d` centimiles: the first `access` centimiles at
/// `slow` mph, the rest at `fast` mph, rounded up. Concave and nondecreasing
/// in d, so the resulting matrix inherits the triangle inequality.
inline Seconds profile_seconds(Centimiles d, Centimiles access, int slow, int fast) {
    const Centimiles a = std::min(d, access);
    const Centimiles b = d - a;
    // seconds = 36 * (a / slow + b / fast)
    const std::int64_t num = 36 * (a * fast + b * slow);
    const std::int64_t den = static_cast<std::int64_t>(slow) * fast;
    return (num + den - 1) / den;
}

struct Superlocation {
    Point center;
    int customers = 0;
    Packages demand = 0;
    Centimiles tour = 0;
    Seconds tour_time = 0;
};

struct Aggregation {
    Instance instance;
    std::vector<Superlocation> nodes;  // nodes[i-1] describes customer node i
    Point depot;
};

inline Point default_depot(const GeneratorConfig& cfg) {
    const Centimiles p = cfg.pitch();
    const Centimiles half = cfg.side() / 2;
    return {(half + p / 2) / p * p, (half + p / 2) / p * p};
}

/// Groups customers by cell and builds the routing instance. Each cell is
/// served by a closed tour from its center; the tour time plus one drop time
/// per customer becomes the service time and the tour distance is added to
/// every entry into the node.
inline Aggregation aggregate_superlocations(const std::vector<CustomerPoint>& customers, const GeneratorConfig& cfg) {
    cfg.validate();
    const Centimiles cell = cfg.cell();
    const int per_side = cfg.cells_per_side();
    auto cell_of = [&](Point p) {
        const auto cx = std::clamp<Centimiles>(p.x / cell, 0, per_side - 1);
        const auto cy = std::clamp<Centimiles>(p.y / cell, 0, per_side - 1);
        return cy * per_side + cx;
    };
    std::map<std::int64_t, std::vector<CustomerPoint>> groups;
    for (const auto& c : customers) {
        if (c.packages <= 0) throw InvalidInput("customer packages must be positive");
        groups[cell_of(c.at)].push_back(c);
    }

    Aggregation out;
    out.depot = cfg.depot.value_or(default_depot(cfg));
    for (const auto& [id, members] : groups) {
        if (static_cast<int>(members.size()) > cfg.max_cluster)
            throw ClusterTooLarge("cell holds " + std::to_string(members.size()) + " customers");
        Superlocation s;
        s.center = {(id % per_side) * cell + cell / 2, (id / per_side) * cell + cell / 2};
        s.customers = static_cast<int>(members.size());
        std::vector<Point> pts{s.center};
        for (const auto& m : members) {
            s.demand += m.packages;
            pts.push_back(m.at);
        }
        std::vector<std::vector<std::int64_t>> d(pts.size(), std::vector<std::int64_t>(pts.size()));
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = 0; b < pts.size(); ++b) d[a][b] = manhattan(pts[a], pts[b]);
        s.tour = held_karp(d).length;
        s.tour_time = (s.tour * 36 + cfg.intra_speed_mph - 1) / cfg.intra_speed_mph;
        out.nodes.push_back(s);
    }

    const int n = static_cast<int>(out.nodes.size());
    const int v = n + 2;
    auto site = [&](int i) { return (i == 0 || i == n + 1) ? out.depot : out.nodes[static_cast<std::size_t>(i - 1)].center; };
    std::vector<Centimiles> dist(static_cast<std::size_t>(v) * v, 0);
    std::vector<Seconds> time(static_cast<std::size_t>(v) * v, 0);
    const Centimiles access = GeneratorConfig::to_cm(cfg.arterial_access_miles);
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) {
            const bool same_site = i == j || ((i == 0 || i == n + 1) && (j == 0 || j == n + 1));
            if (same_site) continue;
            const Centimiles road = manhattan(site(i), site(j));
            const Centimiles tour = (j >= 1 && j <= n) ? out.nodes[static_cast<std::size_t>(j - 1)].tour : 0;
            const std::size_t k = static_cast<std::size_t>(i) * v + j;
            dist[k] = std::max<Centimiles>(road + tour, 1);
            time[k] = std::max<Seconds>(profile_seconds(road, access, cfg.local_speed_mph, cfg.arterial_speed_mph), 1);
        }

    std::vector<Packages> demand{0};
    std::vector<Seconds> service{0};
    for (const auto& s : out.nodes) {
        demand.push_back(s.demand);
        service.push_back(s.tour_time + s.customers * cfg.sigma());
    }
    demand.push_back(0);
    service.push_back(0);

    FleetParams fleet;
    fleet.m_hybrid = cfg.m_hybrid;
    fleet.m_conventional = cfg.m_conventional > 0 ? cfg.m_conventional : std::max(n, 1);
    fleet.capacity = cfg.capacity;
    fleet.max_duration = static_cast<Seconds>(std::llround(cfg.max_duration_hours * 3600.0));
    fleet.ev_range = GeneratorConfig::to_cm(cfg.ev_range_miles);
    out.instance = Instance(n, std::move(demand), std::move(service), std::move(dist), std::move(time), fleet,
                            derive_costs(cfg.costs, cfg.bev));
    return out;
}

/// Draws customers on the street grid, one package each. Cells already at
/// the cluster cap reject further draws, so aggregation never fails.
inline std::vector<CustomerPoint> draw_customers(const GeneratorConfig& cfg) {
    cfg.validate_draw();
    Rng rng(cfg.rng_seed);
    const Centimiles side = cfg.side();
    const Centimiles pitch = cfg.pitch();
    const Centimiles cell = cfg.cell();
    const int per_side = cfg.cells_per_side();
    std::map<std::int64_t, int> load;
    std::vector<CustomerPoint> out;
    auto done = [&] {
        if (cfg.n_superlocations > 0) return static_cast<int>(load.size()) >= cfg.n_superlocations;
        return static_cast<int>(out.size()) >= cfg.n_customers;
    };
    while (!done()) {
        Point p{static_cast<Centimiles>(rng.below(static_cast<std::uint64_t>(side))),
                static_cast<Centimiles>(rng.below(static_cast<std::uint64_t>(side)))};
        Centimiles& snap = rng.below(2) == 0 ? p.x : p.y;
        snap = std::min((snap + pitch / 2) / pitch * pitch, side - 1);
        const std::int64_t id = std::min<Centimiles>(p.y / cell, per_side - 1) * per_side +
                                std::min<Centimiles>(p.x / cell, per_side - 1);
        int& count = load[id];
        if (count >= cfg.max_cluster) continue;
        ++count;
        out.push_back({p, 1});
    }
    return out;
}

inline Aggregation generate(const GeneratorConfig& cfg) { return aggregate_superlocations(draw_customers(cfg), cfg); }

inline Instance generate_instance(const GeneratorConfig& cfg) { return generate(cfg).instance; }

}  // namespace reevrp::harness
