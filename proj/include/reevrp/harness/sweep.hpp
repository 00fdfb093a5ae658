#pragma once

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "reevrp/exact/set_partition.hpp"
#include "reevrp/harness/generator.hpp"
#include "reevrp/io.hpp"
#include "reevrp/its/solver.hpp"

namespace reevrp::harness {

enum class Drivetrain { Reev, Bev };
enum class Algorithm { Its, Exact };

inline const char* drivetrain_name(Drivetrain d) { return d == Drivetrain::Reev ? "REEV" : "BEV"; }
inline const char* algorithm_name(Algorithm a) { return a == Algorithm::Its ? "its" : "exact"; }

/// One cell of a sweep grid. Unset fields keep the source instance's value.
/// `m_hybrid_all` gives every node its own hybrid (the "all REEV" case).
struct ScenarioConfig {
    std::string name;
    std::optional<std::int64_t> m_hybrid;
    bool m_hybrid_all = false;
    std::optional<Packages> capacity;
    std::optional<double> ev_range_miles;
    std::optional<double> max_duration_hours;
    std::optional<double> sigma_minutes;  // generated sources only
    Drivetrain drivetrain = Drivetrain::Reev;
    Algorithm algorithm = Algorithm::Its;
    int seeds = 10;
    double time_limit_s = 60.0;
    std::int64_t iteration_limit = 0;
    bool exact_bound = false;  // also solve exactly for a lower bound when n is small
};

struct InstanceSource {
    std::string name;
    std::variant<GeneratorConfig, Instance> origin;
};

inline Instance build_instance(const InstanceSource& src, const ScenarioConfig& sc) {
    Instance inst;
    if (const auto* cfg = std::get_if<GeneratorConfig>(&src.origin)) {
        GeneratorConfig g = *cfg;
        if (sc.sigma_minutes) g.sigma_minutes = *sc.sigma_minutes;
        inst = generate_instance(g);
    } else {
        if (sc.sigma_minutes) throw InvalidInput("sigma can only be varied on generated sources");
        inst = std::get<Instance>(src.origin);
    }
    auto& f = inst.mutable_fleet();
    if (sc.m_hybrid_all) f.m_hybrid = std::max(inst.n(), 1);
    else if (sc.m_hybrid) f.m_hybrid = *sc.m_hybrid;
    if (sc.capacity) f.capacity = *sc.capacity;
    if (sc.ev_range_miles) f.ev_range = GeneratorConfig::to_cm(*sc.ev_range_miles);
    if (sc.max_duration_hours) f.max_duration = static_cast<Seconds>(std::llround(*sc.max_duration_hours * 3600.0));
    inst.mutable_cost().bev_mode = sc.drivetrain == Drivetrain::Bev;
    inst.validate();
    return inst;
}

struct ScenarioRow {
    std::string instance;
    ScenarioConfig scenario;
    int n = 0;
    std::string status;  // ok, infeasible, or error: <message>
    std::vector<std::optional<std::int64_t>> objectives_micro;  // per seed; empty when infeasible
    std::optional<std::int64_t> lower_bound_micro;
    std::optional<MetricsRecord> best_metrics;

    std::vector<std::int64_t> feasible_objectives() const {
        std::vector<std::int64_t> z;
        for (const auto& o : objectives_micro)
            if (o) z.push_back(*o);
        return z;
    }
    std::optional<std::int64_t> best() const {
        const auto z = feasible_objectives();
        if (z.empty()) return std::nullopt;
        return *std::min_element(z.begin(), z.end());
    }
    std::optional<double> average() const {
        const auto z = feasible_objectives();
        if (z.empty()) return std::nullopt;
        double s = 0;
        for (auto v : z) s += static_cast<double>(v);
        return s / static_cast<double>(z.size());
    }
    std::optional<double> average_deviation_pct() const {
        const auto z = feasible_objectives();
        const auto b = best();
        if (!b || *b == 0) return std::nullopt;
        double s = 0;
        for (auto v : z) s += static_cast<double>(v - *b) / static_cast<double>(*b) * 100.0;
        return s / static_cast<double>(z.size());
    }
    std::optional<double> gap_best_pct() const {
        const auto b = best();
        if (!b || !lower_bound_micro || *b == 0) return std::nullopt;
        return static_cast<double>(*b - *lower_bound_micro) / static_cast<double>(*b) * 100.0;
    }
    std::optional<double> gap_avg_pct() const {
        const auto a = average();
        if (!a || !lower_bound_micro || *a == 0) return std::nullopt;
        return (*a - static_cast<double>(*lower_bound_micro)) / *a * 100.0;
    }
};

inline std::string format_usd(std::int64_t micro) {
    const bool neg = micro < 0;
    const std::uint64_t m = neg ? static_cast<std::uint64_t>(-(micro + 1)) + 1 : static_cast<std::uint64_t>(micro);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%" PRIu64 ".%06" PRIu64, neg ? "-" : "", m / 1000000, m % 1000000);
    return buf;
}

inline std::string format_fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string format_centimiles(Centimiles d) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%" PRId64 ".%02" PRId64, d / 100, d % 100);
    return buf;
}

struct MetricsReport {
    std::vector<ScenarioRow> rows;

    static constexpr const char* kHeader =
        "instance,scenario,drivetrain,algorithm,n,status,seeds,feasible_seeds,best_usd,avg_usd,avg_dev_pct,"
        "lb_usd,gap_best_pct,gap_avg_pct,vmt_miles,vht_hours,ev_miles,extender_miles,cv_miles,"
        "hybrid_vehicles,conventional_vehicles,capacity_utilization,packages_per_vehicle,objectives_micro_usd";

    std::string to_csv() const {
        std::ostringstream out;
        out << kHeader << '\n';
        auto opt = [](const std::optional<double>& v) { return v ? format_fixed(*v) : std::string(); };
        for (const auto& r : rows) {
            const auto z = r.feasible_objectives();
            out << r.instance << ',' << r.scenario.name << ',' << drivetrain_name(r.scenario.drivetrain) << ','
                << algorithm_name(r.scenario.algorithm) << ',' << r.n << ',' << r.status << ','
                << r.objectives_micro.size() << ',' << z.size() << ','
                << (r.best() ? format_usd(*r.best()) : "") << ','
                << (r.average() ? format_fixed(*r.average() / 1e6) : "") << ',' << opt(r.average_deviation_pct())
                << ',' << (r.lower_bound_micro ? format_usd(*r.lower_bound_micro) : "") << ','
                << opt(r.gap_best_pct()) << ',' << opt(r.gap_avg_pct()) << ',';
            if (const auto& m = r.best_metrics) {
                out << format_centimiles(m->vmt) << ',' << format_fixed(to_hours(m->vht)) << ','
                    << format_centimiles(m->ev_miles) << ',' << format_centimiles(m->extender_miles) << ','
                    << format_centimiles(m->cv_miles) << ',' << m->hybrid_vehicles << ','
                    << m->conventional_vehicles << ',' << format_fixed(m->capacity_utilization) << ','
                    << format_fixed(m->packages_per_vehicle) << ',';
            } else {
                out << ",,,,,,,,,";
            }
            for (std::size_t k = 0; k < r.objectives_micro.size(); ++k) {
                if (k) out << ';';
                if (r.objectives_micro[k]) out << *r.objectives_micro[k];
                else out << "inf";
            }
            out << '\n';
        }
        return out.str();
    }
};

namespace detail {

struct SeedOutcome {
    std::optional<Solution> solution;
    std::optional<std::int64_t> objective_micro;
    std::string error;
    bool infeasible = false;
};

inline SeedOutcome run_one(const Instance& inst, const ScenarioConfig& sc, int seed) {
    SeedOutcome o;
    try {
        if (sc.algorithm == Algorithm::Exact) {
            auto r = exact::solve_exact(inst);
            o.objective_micro = to_micro_usd(r.objective);
            o.solution = std::move(r.solution);
        } else {
            its::ItsParams p;
            p.rng_seed = static_cast<std::uint64_t>(seed);
            p.time_limit = sc.time_limit_s;
            p.iteration_limit = sc.iteration_limit;
            auto r = its::solve_its(inst, p);
            o.objective_micro = to_micro_usd(solution_cost(r.solution, inst));
            o.solution = std::move(r.solution);
        }
    } catch (const Infeasible&) {
        o.infeasible = true;
    } catch (const std::exception& e) {
        o.error = e.what();
    }
    return o;
}

}  // namespace detail

/// Runs every (source, scenario) cell over its seeds, up to `jobs` runs at
/// once. Failures are recorded in the cell's status; the sweep continues.
inline MetricsReport run_sweep(const std::vector<InstanceSource>& sources, const std::vector<ScenarioConfig>& grid,
                               int jobs = 1) {
    struct Cell {
        std::string source;
        ScenarioConfig scenario;
        std::optional<Instance> inst;
        std::string build_error;
        std::vector<detail::SeedOutcome> seeds;
        std::optional<detail::SeedOutcome> bound;
    };
    std::vector<Cell> cells;
    for (const auto& src : sources)
        for (const auto& sc : grid) {
            Cell c{src.name, sc, std::nullopt, {}, {}, std::nullopt};
            try {
                c.inst = build_instance(src, sc);
            } catch (const std::exception& e) {
                c.build_error = e.what();
            }
            cells.push_back(std::move(c));
        }

    struct Task {
        std::size_t cell;
        int seed;  // 0 marks the exact lower-bound run
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto& c = cells[i];
        if (!c.inst) continue;
        const int runs = c.scenario.algorithm == Algorithm::Exact ? 1 : std::max(c.scenario.seeds, 1);
        c.seeds.resize(static_cast<std::size_t>(runs));
        for (int s = 1; s <= runs; ++s) tasks.push_back({i, s});
        if (c.scenario.algorithm == Algorithm::Its && c.scenario.exact_bound && c.inst->n() <= 12) {
            c.bound.emplace();
            tasks.push_back({i, 0});
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) {
            Cell& c = cells[tasks[t].cell];
            if (tasks[t].seed == 0) {
                ScenarioConfig exact = c.scenario;
                exact.algorithm = Algorithm::Exact;
                *c.bound = detail::run_one(*c.inst, exact, 0);
            } else {
                c.seeds[static_cast<std::size_t>(tasks[t].seed - 1)] =
                    detail::run_one(*c.inst, c.scenario, tasks[t].seed);
            }
        }
    };
    const int threads = std::clamp(jobs, 1, 256);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    MetricsReport report;
    for (auto& c : cells) {
        ScenarioRow row;
        row.instance = c.source;
        row.scenario = c.scenario;
        if (!c.inst) {
            row.status = "error: " + c.build_error;
            report.rows.push_back(std::move(row));
            continue;
        }
        row.n = c.inst->n();
        std::string error;
        std::optional<std::size_t> best;
        for (std::size_t k = 0; k < c.seeds.size(); ++k) {
            const auto& o = c.seeds[k];
            row.objectives_micro.push_back(o.objective_micro);
            if (!o.error.empty() && error.empty()) error = o.error;
            if (o.objective_micro && (!best || *o.objective_micro < *c.seeds[*best].objective_micro)) best = k;
        }
        if (best) {
            row.status = "ok";
            row.best_metrics = metrics(*c.seeds[*best].solution, *c.inst);
        } else {
            row.status = error.empty() ? "infeasible" : "error: " + error;
        }
        if (c.scenario.algorithm == Algorithm::Exact && best) row.lower_bound_micro = *c.seeds[*best].objective_micro;
        if (c.bound && c.bound->objective_micro) row.lower_bound_micro = c.bound->objective_micro;
        for (char& ch : row.status)
            if (ch == ',' || ch == '\n') ch = ';';
        report.rows.push_back(std::move(row));
    }
    return report;
}

/// Scenario grids from the computational study. Unless a grid varies them,
/// cells use Q = 120, T = 10 h, 25 hybrids, and D_E = 33 mi (REEV) or
/// 150 mi (BEV).
inline std::vector<ScenarioConfig> builtin_grid(const std::string& name) {
    auto base = [](std::string label, Drivetrain d) {
        ScenarioConfig s;
        s.name = std::move(label);
        s.m_hybrid = 25;
        s.capacity = 120;
        s.max_duration_hours = 10.0;
        s.ev_range_miles = d == Drivetrain::Reev ? 33.0 : 150.0;
        s.drivetrain = d;
        return s;
    };
    std::vector<ScenarioConfig> g;
    if (name == "table2") {
        auto cell = [](std::string label, std::optional<std::int64_t> mh, Packages q, double de, double t) {
            ScenarioConfig s;
            s.name = std::move(label);
            s.m_hybrid = mh;
            s.m_hybrid_all = !mh.has_value();
            s.capacity = q;
            s.ev_range_miles = de;
            s.max_duration_hours = t;
            return s;
        };
        g.push_back(cell("baseline", 5, 80, 33, 8));
        g.push_back(cell("all-reev", std::nullopt, 80, 33, 8));
        g.push_back(cell("all-cv", 0, 80, 33, 8));
        g.push_back(cell("higher-capacity", 5, 120, 33, 8));
        g.push_back(cell("higher-ev-range", 5, 80, 66, 8));
        g.push_back(cell("higher-work-hours", 5, 80, 33, 10));
        return g;
    }
    const Drivetrain d = name.ends_with("-bev") ? Drivetrain::Bev : Drivetrain::Reev;
    if (name == "deployment-reev" || name == "deployment-bev") {
        for (std::int64_t m : {0, 25, 50, 100, 200, 2000}) {
            auto s = base("m_hybrid=" + std::to_string(m), d);
            s.m_hybrid = m;
            g.push_back(s);
        }
    } else if (name == "work-hours-reev" || name == "work-hours-bev") {
        for (int t = 10; t <= 14; ++t) {
            auto s = base("T=" + std::to_string(t), d);
            s.max_duration_hours = t;
            g.push_back(s);
        }
    } else if (name == "range-reev" || name == "range-bev") {
        const std::vector<int> ranges = d == Drivetrain::Reev ? std::vector<int>{33, 40, 60, 80, 100, 125, 150}
                                                              : std::vector<int>{100, 125, 150, 200, 250};
        for (int r : ranges) {
            auto s = base("D_E=" + std::to_string(r), d);
            s.ev_range_miles = r;
            g.push_back(s);
        }
    } else if (name == "capacity-reev" || name == "capacity-bev") {
        for (Packages q : {150, 180, 210, 240}) {
            auto s = base("Q=" + std::to_string(q), d);
            s.capacity = q;
            g.push_back(s);
        }
    } else if (name == "service-time") {
        for (int sigma = 0; sigma <= 5; ++sigma) {
            auto s = base("sigma=" + std::to_string(sigma), Drivetrain::Reev);
            s.sigma_minutes = sigma;
            g.push_back(s);
        }
    } else {
        throw InvalidInput("unknown grid '" + name + "'");
    }
    return g;
}

inline std::vector<std::string> builtin_grid_names() {
    return {"table2",          "deployment-reev", "deployment-bev", "work-hours-reev", "work-hours-bev",
            "range-reev",      "range-bev",       "capacity-reev",  "capacity-bev",    "service-time"};
}

// ---- JSON configuration -------------------------------------------------

inline GeneratorConfig generator_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInput("generator block must be an object");
    GeneratorConfig g;
    try {
        g.n_superlocations = j.value("n", g.n_superlocations);
        g.n_customers = j.value("customers", g.n_customers);
        g.rng_seed = j.value("seed", g.rng_seed);
        g.area_miles = j.value("area_miles", g.area_miles);
        g.cell_miles = j.value("cell_miles", g.cell_miles);
        g.grid_pitch_miles = j.value("grid_pitch_miles", g.grid_pitch_miles);
        g.sigma_minutes = j.value("sigma_minutes", g.sigma_minutes);
        g.intra_speed_mph = j.value("intra_speed_mph", g.intra_speed_mph);
        g.local_speed_mph = j.value("local_speed_mph", g.local_speed_mph);
        g.arterial_speed_mph = j.value("arterial_speed_mph", g.arterial_speed_mph);
        g.arterial_access_miles = j.value("arterial_access_miles", g.arterial_access_miles);
        g.m_hybrid = j.value("m_hybrid", g.m_hybrid);
        g.m_conventional = j.value("m_conventional", g.m_conventional);
        g.capacity = j.value("capacity", g.capacity);
        g.max_duration_hours = j.value("max_duration_hours", g.max_duration_hours);
        g.ev_range_miles = j.value("ev_range_miles", g.ev_range_miles);
        g.bev = j.value("bev", g.bev);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad generator block: ") + e.what());
    }
    g.validate();
    return g;
}

inline ScenarioConfig scenario_from_json(const Json& j, const ScenarioConfig& defaults) {
    if (!j.is_object()) throw InvalidInput("scenario must be an object");
    ScenarioConfig s = defaults;
    try {
        s.name = j.value("name", s.name);
        if (j.contains("m_hybrid")) {
            if (j["m_hybrid"].is_string()) {
                if (j["m_hybrid"] != "all") throw InvalidInput("m_hybrid must be an integer or \"all\"");
                s.m_hybrid_all = true;
                s.m_hybrid.reset();
            } else {
                s.m_hybrid = j["m_hybrid"].get<std::int64_t>();
                s.m_hybrid_all = false;
            }
        }
        if (j.contains("capacity")) s.capacity = j["capacity"].get<Packages>();
        if (j.contains("ev_range_miles")) s.ev_range_miles = j["ev_range_miles"].get<double>();
        if (j.contains("max_duration_hours")) s.max_duration_hours = j["max_duration_hours"].get<double>();
        if (j.contains("sigma_minutes")) s.sigma_minutes = j["sigma_minutes"].get<double>();
        if (j.contains("drivetrain")) {
            const auto d = j["drivetrain"].get<std::string>();
            if (d != "REEV" && d != "BEV") throw InvalidInput("drivetrain must be REEV or BEV");
            s.drivetrain = d == "REEV" ? Drivetrain::Reev : Drivetrain::Bev;
        }
        if (j.contains("algorithm")) {
            const auto a = j["algorithm"].get<std::string>();
            if (a != "its" && a != "exact") throw InvalidInput("algorithm must be its or exact");
            s.algorithm = a == "its" ? Algorithm::Its : Algorithm::Exact;
        }
        s.seeds = j.value("seeds", s.seeds);
        s.time_limit_s = j.value("time_limit_s", s.time_limit_s);
        s.iteration_limit = j.value("iteration_limit", s.iteration_limit);
        s.exact_bound = j.value("bound", s.exact_bound);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad scenario: ") + e.what());
    }
    if (s.seeds < 1) throw InvalidInput("seeds must be at least 1");
    if (!(s.time_limit_s > 0)) throw InvalidInput("time limit must be positive");
    return s;
}

struct SweepSpec {
    std::vector<InstanceSource> sources;
    std::vector<ScenarioConfig> grid;
};

/// Sweep file layout:
///   {"sources":  [{"name": .., "generate": {..}} | {"name": .., "instance": "path.json"}],
///    "defaults": {scenario fields},
///    "grid":     "<builtin name>" | [scenario, ...]}
/// Instance paths are resolved relative to `base_dir`.
inline SweepSpec sweep_from_json(const Json& j, const std::string& base_dir = "") {
    if (!j.is_object()) throw InvalidInput("sweep file must be a JSON object");
    SweepSpec spec;
    if (!j.contains("sources") || !j["sources"].is_array() || j["sources"].empty())
        throw InvalidInput("sweep file needs a nonempty 'sources' array");
    for (const auto& s : j["sources"]) {
        if (!s.is_object()) throw InvalidInput("source must be an object");
        InstanceSource src;
        src.name = s.value("name", "source" + std::to_string(spec.sources.size() + 1));
        if (s.contains("generate")) {
            src.origin = generator_from_json(s["generate"]);
        } else if (s.contains("instance") && s["instance"].is_string()) {
            std::string path = s["instance"].get<std::string>();
            if (!base_dir.empty() && !path.empty() && path[0] != '/') path = base_dir + "/" + path;
            src.origin = instance_from_json(read_json_file(path));
        } else {
            throw InvalidInput("source needs 'generate' or 'instance'");
        }
        spec.sources.push_back(std::move(src));
    }
    ScenarioConfig defaults;
    if (j.contains("defaults")) defaults = scenario_from_json(j["defaults"], defaults);
    if (!j.contains("grid")) throw InvalidInput("sweep file needs a 'grid'");
    const Json& g = j["grid"];
    if (g.is_string()) {
        for (const auto& cell : builtin_grid(g.get<std::string>())) {
            ScenarioConfig s = defaults;
            s.name = cell.name;
            s.m_hybrid = cell.m_hybrid;
            s.m_hybrid_all = cell.m_hybrid_all;
            s.capacity = cell.capacity;
            s.ev_range_miles = cell.ev_range_miles;
            s.max_duration_hours = cell.max_duration_hours;
            s.sigma_minutes = cell.sigma_minutes;
            s.drivetrain = cell.drivetrain;
            spec.grid.push_back(std::move(s));
        }
    } else if (g.is_array()) {
        for (const auto& cell : g) spec.grid.push_back(scenario_from_json(cell, defaults));
    } else {
        throw InvalidInput("grid must be a builtin name or an array of scenarios");
    }
    return spec;
}

}  // namespace reevrp::harness
