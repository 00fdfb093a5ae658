#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "reevrp/instance.hpp"
#include "reevrp/model.hpp"

namespace reevrp {

using Json = nlohmann::json;

namespace detail {
template <typename T>
T get_field(const Json& j, const char* key) {
    if (!j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad field '") + key + "': " + e.what());
    }
}
}  // namespace detail

inline Json instance_to_json(const Instance& inst) {
    const auto& f = inst.fleet();
    const auto& c = inst.cost();
    return Json{
        {"n", inst.n()},
        {"demand", inst.demands()},
        {"service_time_s", inst.service_times()},
        {"dist_centimiles", inst.dist_matrix()},
        {"time_s", inst.time_matrix()},
        {"fleet",
         {{"m_hybrid", f.m_hybrid},
          {"m_conventional", f.m_conventional},
          {"capacity", f.capacity},
          {"max_duration_s", f.max_duration},
          {"ev_range_centimiles", f.ev_range}}},
        {"cost",
         {{"c_e_micro_usd", c.c_e},
          {"c_g_micro_usd", c.c_g},
          {"c_0_micro_usd", c.c_0},
          {"bev_mode", c.bev_mode}}},
    };
}

inline Instance instance_from_json(const Json& j) {
    using detail::get_field;
    if (!j.is_object()) throw InvalidInput("instance document must be a JSON object");
    const Json fj = get_field<Json>(j, "fleet");
    const Json cj = get_field<Json>(j, "cost");
    FleetParams fleet{get_field<std::int64_t>(fj, "m_hybrid"),
                      get_field<std::int64_t>(fj, "m_conventional"),
                      get_field<Packages>(fj, "capacity"),
                      get_field<Seconds>(fj, "max_duration_s"),
                      get_field<Centimiles>(fj, "ev_range_centimiles")};
    CostModel cost{get_field<Rate>(cj, "c_e_micro_usd"), get_field<Rate>(cj, "c_g_micro_usd"),
                   get_field<Rate>(cj, "c_0_micro_usd"),
                   cj.contains("bev_mode") ? get_field<bool>(cj, "bev_mode") : false};
    return Instance(get_field<int>(j, "n"), get_field<std::vector<Packages>>(j, "demand"),
                    get_field<std::vector<Seconds>>(j, "service_time_s"),
                    get_field<std::vector<Centimiles>>(j, "dist_centimiles"),
                    get_field<std::vector<Seconds>>(j, "time_s"), fleet, cost);
}

inline Json solution_to_json(const Solution& sol, const Instance& inst) {
    Json routes = Json::array();
    Json types = Json::array();
    for (std::size_t f = 0; f < sol.routes.size(); ++f) {
        routes.push_back(sol.routes[f].customers);
        types.push_back(std::string(1, type_code(sol.types[f])));
    }
    Json objective = nullptr;
    try {
        objective = to_micro_usd(solution_cost(sol, inst));
    } catch (const BevRangeExceeded&) {
    }
    return Json{{"routes", routes}, {"types", types}, {"objective_micro_usd", objective}};
}

/// Reads a solution document; route statistics are recomputed from the
/// instance, and the stored objective is ignored.
inline Solution solution_from_json(const Json& j, const Instance& inst) {
    using detail::get_field;
    if (!j.is_object()) throw InvalidInput("solution document must be a JSON object");
    const auto routes = get_field<std::vector<std::vector<NodeId>>>(j, "routes");
    const auto types = get_field<std::vector<std::string>>(j, "types");
    if (routes.size() != types.size()) throw InvalidInput("routes and types differ in length");
    Solution sol;
    for (std::size_t f = 0; f < routes.size(); ++f) {
        for (NodeId c : routes[f])
            if (!inst.is_customer(c)) throw InvalidInput("route contains a non-customer node");
        sol.routes.push_back(make_route(inst, routes[f]));
        if (types[f] == "H")
            sol.types.push_back(VehicleType::Hybrid);
        else if (types[f] == "C")
            sol.types.push_back(VehicleType::Conventional);
        else
            throw InvalidInput("vehicle type must be \"H\" or \"C\"");
    }
    return sol;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write " + path);
    out << text;
}

inline void write_json_file(const std::string& path, const Json& j) {
    write_text_file(path, j.dump(1) + "\n");
}

}  // namespace reevrp
