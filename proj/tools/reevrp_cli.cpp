#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "reevrp/reevrp.hpp"

using namespace reevrp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInvalid = 3;

void emit(const Json& j, const std::string& out) {
    if (out.empty() || out == "-")
        std::cout << j.dump(1) << '\n';
    else
        write_json_file(out, j);
}

its::ItsParams its_params_from_json(const Json& j) {
    its::ItsParams p;
    if (!j.is_object()) throw InvalidInput("params block must be an object");
    try {
        p.rcl = j.value("rcl", p.rcl);
        p.tenure = j.value("tenure", p.tenure);
        p.maxiter = j.value("maxiter", p.maxiter);
        p.restart = j.value("restart", p.restart);
        if (j.contains("perturb_miles"))
            p.perturb = static_cast<Centimiles>(std::llround(j["perturb_miles"].get<double>() * 100.0));
        p.time_limit = j.value("time_limit_s", p.time_limit);
        p.iteration_limit = j.value("iteration_limit", p.iteration_limit);
        if (j.contains("phi_q_micro_usd") || j.contains("phi_t_per_hour_micro_usd") ||
            j.contains("phi_range_micro_usd_per_mile")) {
            MeritParams m;
            m.phi_q = j.value("phi_q_micro_usd", std::int64_t{0}) * kMoneyPerMicroUsd;
            m.phi_t_per_hour = j.value("phi_t_per_hour_micro_usd", std::int64_t{0}) * kMoneyPerMicroUsd;
            m.phi_range = j.value("phi_range_micro_usd_per_mile", std::int64_t{0});
            p.merit = m;
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad params block: ") + e.what());
    }
    return p;
}

Json metrics_to_json(const MetricsRecord& m) {
    return Json{{"cost_micro_usd", to_micro_usd(m.cost)},
                {"vmt_centimiles", m.vmt},
                {"vht_s", m.vht},
                {"travel_time_s", m.travel_time},
                {"ev_centimiles", m.ev_miles},
                {"extender_centimiles", m.extender_miles},
                {"cv_centimiles", m.cv_miles},
                {"hybrid_vehicles", m.hybrid_vehicles},
                {"conventional_vehicles", m.conventional_vehicles},
                {"packages", m.packages},
                {"capacity_utilization", m.capacity_utilization},
                {"packages_per_vehicle", m.packages_per_vehicle}};
}

Json report_to_json(const FeasibilityReport& rep) {
    Json routes = Json::array();
    for (const auto& v : rep.routes)
        routes.push_back({{"route", v.route},
                          {"capacity_excess", v.capacity_excess},
                          {"duration_excess_s", v.duration_excess},
                          {"bev_range_excess_centimiles", v.bev_range_excess},
                          {"repeated", v.repeated},
                          {"invalid", v.invalid},
                          {"empty", v.empty}});
    return Json{{"feasible", rep.feasible()},
                {"missing", rep.missing},
                {"duplicated", rep.duplicated},
                {"hybrid_excess", rep.hybrid_excess},
                {"conventional_excess", rep.conventional_excess},
                {"shape_mismatch", rep.shape_mismatch},
                {"route_violations", routes}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Routing toolkit for mixed fleets of range-extended electric and conventional vehicles"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a synthetic instance");
    int gen_n = 50;
    int gen_customers = 0;
    std::uint64_t gen_seed = 1;
    std::string gen_out, gen_config;
    bool gen_bev = false;
    gen->add_option("--n", gen_n, "Number of superlocations (customer nodes)");
    gen->add_option("--customers", gen_customers, "Draw exactly this many customers instead of targeting --n");
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("--config", gen_config, "Generator JSON block (fields override defaults)");
    gen->add_flag("--bev", gen_bev, "Battery-electric hybrids (extender disabled)");
    gen->add_option("--out", gen_out, "Output instance file (stdout when omitted)");

    // solve
    auto* solve = app.add_subcommand("solve", "Solve an instance");
    std::string sv_instance, sv_algorithm = "its", sv_out, sv_trace, sv_params;
    int sv_seeds = 1;
    double sv_time = 60.0;
    std::int64_t sv_iterations = 0;
    solve->add_option("--instance", sv_instance, "Instance file")->required();
    solve->add_option("--algorithm", sv_algorithm, "its or exact")->check(CLI::IsMember({"its", "exact"}));
    solve->add_option("--seeds", sv_seeds, "Independent ITS runs (seeds 1..K); the best is kept");
    solve->add_option("--time-limit", sv_time, "ITS time limit per run in seconds");
    solve->add_option("--iterations", sv_iterations, "ITS tabu-search run budget per seed (0 = unlimited)");
    solve->add_option("--params", sv_params, "ITS params JSON file");
    solve->add_option("--trace", sv_trace, "Write the best run's search trace CSV here");
    solve->add_option("--out", sv_out, "Output solution file (stdout when omitted)");

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "Check a solution and report its cost and metrics");
    std::string ev_instance, ev_solution;
    eval->add_option("--instance", ev_instance, "Instance file")->required();
    eval->add_option("--solution", ev_solution, "Solution file")->required();

    // price
    auto* pr = app.add_subcommand("price", "Price routes of one subtype under given duals");
    std::string pr_instance, pr_duals, pr_subtype = "C", pr_mode = "exact", pr_out;
    int pr_ng = 8;
    std::size_t pr_limit = 50;
    bool pr_no_dominance = false;
    pr->add_option("--instance", pr_instance, "Instance file")->required();
    pr->add_option("--duals", pr_duals, "Dual-values document")->required();
    pr->add_option("--subtype", pr_subtype, "E, G or C")->check(CLI::IsMember({"E", "G", "C"}));
    pr->add_option("--ng-size", pr_ng, "Neighbourhood size of the ng-sets");
    pr->add_option("--mode", pr_mode, "exact or heuristic")->check(CLI::IsMember({"exact", "heuristic"}));
    pr->add_flag("--no-dominance", pr_no_dominance, "Disable label dominance");
    pr->add_option("--max-routes", pr_limit, "Routes to print (all are counted)");
    pr->add_option("--out", pr_out, "Output file (stdout when omitted)");

    // separate
    auto* sep = app.add_subcommand("separate", "Find cuts violated by a fractional solution");
    std::string sp_instance, sp_solution, sp_out;
    int sp_rci_size = 4;
    sep->add_option("--instance", sp_instance, "Instance file")->required();
    sep->add_option("--solution", sp_solution, "Fractional-solution document")->required();
    sep->add_option("--rci-max-size", sp_rci_size, "Largest customer set enumerated for capacity cuts");
    sep->add_option("--out", sp_out, "Output file (stdout when omitted)");

    // sweep
    auto* sw = app.add_subcommand("sweep", "Run a scenario sweep and write a CSV report");
    std::string sw_grid, sw_out;
    int sw_jobs = 1;
    sw->add_option("--grid", sw_grid, "Sweep file (JSON)")->required();
    sw->add_option("--jobs", sw_jobs, "Concurrent runs");
    sw->add_option("--out", sw_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*gen) {
            harness::GeneratorConfig cfg;
            if (!gen_config.empty()) cfg = harness::generator_from_json(read_json_file(gen_config));
            if (gen->count("--n") || gen_config.empty()) cfg.n_superlocations = gen_n;
            if (gen_customers > 0) {
                cfg.n_superlocations = 0;
                cfg.n_customers = gen_customers;
            }
            if (gen->count("--seed")) cfg.rng_seed = gen_seed;
            if (gen_bev) cfg.bev = true;
            emit(instance_to_json(harness::generate_instance(cfg)), gen_out);
        } else if (*solve) {
            const Instance inst = instance_from_json(read_json_file(sv_instance));
            Json doc;
            if (sv_algorithm == "exact") {
                const auto res = exact::solve_exact(inst);
                doc = solution_to_json(res.solution, inst);
                doc["certified"] = true;
            } else {
                its::ItsParams base = sv_params.empty() ? its::ItsParams{} : its_params_from_json(read_json_file(sv_params));
                if (solve->count("--time-limit") || sv_params.empty()) base.time_limit = sv_time;
                if (solve->count("--iterations")) base.iteration_limit = sv_iterations;
                if (sv_seeds < 1) throw InvalidInput("--seeds must be at least 1");
                std::optional<its::ItsResult> best;
                std::optional<Money> best_cost;
                int best_seed = 0;
                for (int s = 1; s <= sv_seeds; ++s) {
                    its::ItsParams p = base;
                    p.rng_seed = static_cast<std::uint64_t>(s);
                    try {
                        auto r = its::solve_its(inst, p);
                        const Money c = solution_cost(r.solution, inst);
                        if (!best_cost || c < *best_cost) {
                            best_cost = c;
                            best = std::move(r);
                            best_seed = s;
                        }
                    } catch (const its::NoFeasibleSolutionFound&) {
                    }
                }
                if (!best) throw Infeasible("no feasible solution found by any seed");
                doc = solution_to_json(best->solution, inst);
                doc["seed"] = best_seed;
                if (!sv_trace.empty()) write_text_file(sv_trace, best->trace.to_csv());
            }
            emit(doc, sv_out);
        } else if (*eval) {
            const Instance inst = instance_from_json(read_json_file(ev_instance));
            const Solution sol = solution_from_json(read_json_file(ev_solution), inst);
            const FeasibilityReport rep = check_feasibility(sol, inst);
            Json doc = report_to_json(rep);
            doc["objective_micro_usd"] = solution_to_json(sol, inst)["objective_micro_usd"];
            if (rep.feasible()) doc["metrics"] = metrics_to_json(metrics(sol, inst));
            std::cout << doc.dump(1) << '\n';
            if (!rep.feasible()) return kExitInfeasible;
        } else if (*pr) {
            const Instance inst = instance_from_json(read_json_file(pr_instance));
            const auto duals = pricing::duals_from_json(read_json_file(pr_duals), inst);
            pricing::PricingOptions opt;
            opt.mode = pr_mode == "exact" ? pricing::PricingMode::Exact : pricing::PricingMode::Heuristic;
            opt.dominance = !pr_no_dominance;
            const auto res = pricing::price(inst, pricing::parse_subtype(pr_subtype), duals,
                                            pricing::NgSets(inst, pr_ng), opt);
            Json routes = Json::array();
            for (std::size_t k = 0; k < res.routes.size() && k < pr_limit; ++k)
                routes.push_back({{"route", res.routes[k].route.customers},
                                  {"reduced_cost_micro_usd",
                                   static_cast<double>(res.routes[k].reduced_cost) / kMoneyPerMicroUsd}});
            Json doc{{"subtype", pr_subtype},
                     {"negative_routes", res.routes.size()},
                     {"labels", res.labels},
                     {"routes", routes}};
            doc["min_reduced_cost_micro_usd"] =
                res.min_reduced_cost() ? Json(static_cast<double>(*res.min_reduced_cost()) / kMoneyPerMicroUsd)
                                       : Json(nullptr);
            emit(doc, pr_out);
        } else if (*sep) {
            const Instance inst = instance_from_json(read_json_file(sp_instance));
            const auto sol = pricing::fractional_from_json(read_json_file(sp_solution), inst);
            const auto ipec = pricing::separate_ipec(pricing::extender_flow(sol, inst), inst);
            const auto rci = pricing::separate_rci(pricing::column_flow(sol, inst), inst, sp_rci_size);
            const auto strength = pricing::strengthening_lhs(sol, inst);
            Json ipec_j = Json::array();
            for (const auto& p : ipec.paths)
                ipec_j.push_back({{"id", "ipec/" + pricing::detail::id_list(p.customers)},
                                  {"path", p.customers},
                                  {"closure_flow", pricing::flow_value(p.closure_flow)},
                                  {"violation", pricing::flow_value(p.violation())}});
            Json rci_j = Json::array();
            for (const auto& s : rci)
                rci_j.push_back({{"id", "rci/" + pricing::detail::id_list(s.set)},
                                 {"set", s.set},
                                 {"violation", pricing::flow_value(s.violation)}});
            Json doc{{"ipec", ipec_j},
                     {"ipec_cap_reached", ipec.cap_reached},
                     {"rci", rci_j},
                     {"strength", {{"lhs_miles", strength.lhs_miles()},
                                   {"rhs_miles", strength.rhs_miles()},
                                   {"satisfied", strength.satisfied()}}}};
            emit(doc, sp_out);
        } else if (*sw) {
            const std::string base = std::filesystem::path(sw_grid).parent_path().string();
            const auto spec = harness::sweep_from_json(read_json_file(sw_grid), base);
            const auto report = harness::run_sweep(spec.sources, spec.grid, sw_jobs);
            std::filesystem::create_directories(sw_out);
            write_text_file((std::filesystem::path(sw_out) / "report.csv").string(), report.to_csv());
            std::cout << "wrote " << report.rows.size() << " rows to "
                      << (std::filesystem::path(sw_out) / "report.csv").string() << '\n';
        }
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const InstanceTooLarge& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}
