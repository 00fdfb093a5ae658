#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "reevrp/io.hpp"
#include "reevrp/pricing/incidence.hpp"

namespace reevrp::pricing {

struct PathCutDual {
    std::vector<NodeId> path;  // customers of p, depots implicit
    Money dual = 0;            // <= 0
};

struct SetCutDual {
    std::vector<NodeId> set;  // customer subset S
    Money dual = 0;           // <= 0
};

/// Dual values of the master constraints. Covering duals are free; the
/// fleet, path-elimination and rounded-capacity rows are <= rows of a
/// minimization, so their duals are nonpositive; the strengthening row is a
/// >= row with a nonnegative dual quoted per centimile.
struct DualValues {
    std::vector<Money> pi;  // indexed by node; entries 0 and n+1 unused
    Money mu_hybrid = 0;
    Money mu_conventional = 0;
    std::vector<PathCutDual> ipec;
    std::vector<SetCutDual> rci;
    Money strength = 0;

    static DualValues zero(const Instance& inst) {
        DualValues d;
        d.pi.assign(static_cast<std::size_t>(inst.num_nodes()), 0);
        return d;
    }

    Money mu(Subtype k) const { return k == Subtype::C ? mu_conventional : mu_hybrid; }

    void validate(const Instance& inst) const {
        if (pi.size() != static_cast<std::size_t>(inst.num_nodes()))
            throw InvalidInput("covering duals must have one entry per node");
        if (mu_hybrid > 0 || mu_conventional > 0) throw InvalidInput("fleet duals must be nonpositive");
        if (strength < 0) throw InvalidInput("strengthening dual must be nonnegative");
        for (const auto& c : ipec) {
            if (c.dual > 0) throw InvalidInput("path-elimination duals must be nonpositive");
            if (c.path.empty()) throw InvalidInput("path-elimination cut without customers");
            for (NodeId v : c.path)
                if (!inst.is_customer(v)) throw InvalidInput("path-elimination cut names a non-customer");
        }
        for (const auto& c : rci) {
            if (c.dual > 0) throw InvalidInput("rounded-capacity duals must be nonpositive");
            if (c.set.empty()) throw InvalidInput("rounded-capacity cut with an empty set");
            for (NodeId v : c.set)
                if (!inst.is_customer(v)) throw InvalidInput("rounded-capacity cut names a non-customer");
        }
    }
};

namespace detail {

inline std::vector<NodeId> parse_id_list(const std::string& text) {
    std::vector<NodeId> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw InvalidInput("bad node list '" + text + "'");
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw InvalidInput("bad node list '" + text + "'");
        }
    }
    return out;
}

inline std::string id_list(const std::vector<NodeId>& ids) {
    std::string s;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(ids[k]);
    }
    return s;
}

inline Money micro_to_money(double v) { return static_cast<Money>(std::llround(v * kMoneyPerMicroUsd)); }

}  // namespace detail

/// Reads a dual-value document: an object keyed by constraint id.
///
///   cover/<i>          covering row of customer i (micro-USD)
///   fleet/H, fleet/C   fleet-size rows (micro-USD)
///   ipec/<v1,..,vl>    path-elimination row of path (0, v1..vl, n+1)
///   rci/<i,j,..>       rounded-capacity row of customer set S
///   strength           strengthening row (micro-USD per mile)
///
/// Missing ids mean a zero dual.
inline DualValues duals_from_json(const Json& j, const Instance& inst) {
    if (!j.is_object()) throw InvalidInput("dual document must be a JSON object");
    DualValues d = DualValues::zero(inst);
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) throw InvalidInput("dual '" + key + "' must be a number");
        const double v = value.get<double>();
        const Money m = detail::micro_to_money(v);
        if (key.rfind("cover/", 0) == 0) {
            const auto ids = detail::parse_id_list(key.substr(6));
            if (ids.size() != 1 || !inst.is_customer(ids[0])) throw InvalidInput("bad covering id '" + key + "'");
            d.pi[ids[0]] = m;
        } else if (key == "fleet/H") {
            d.mu_hybrid = m;
        } else if (key == "fleet/C") {
            d.mu_conventional = m;
        } else if (key.rfind("ipec/", 0) == 0) {
            d.ipec.push_back({detail::parse_id_list(key.substr(5)), m});
        } else if (key.rfind("rci/", 0) == 0) {
            d.rci.push_back({detail::parse_id_list(key.substr(4)), m});
        } else if (key == "strength") {
            d.strength = static_cast<Money>(std::llround(v));
        } else {
            throw InvalidInput("unknown constraint id '" + key + "'");
        }
    }
    d.validate(inst);
    return d;
}

inline Json duals_to_json(const DualValues& d, const Instance& inst) {
    auto micro = [](Money m) { return static_cast<double>(m) / kMoneyPerMicroUsd; };
    Json j = Json::object();
    for (NodeId i = 1; i <= inst.n(); ++i)
        if (d.pi[i] != 0) j["cover/" + std::to_string(i)] = micro(d.pi[i]);
    if (d.mu_hybrid != 0) j["fleet/H"] = micro(d.mu_hybrid);
    if (d.mu_conventional != 0) j["fleet/C"] = micro(d.mu_conventional);
    for (const auto& c : d.ipec) j["ipec/" + detail::id_list(c.path)] = micro(c.dual);
    for (const auto& c : d.rci) j["rci/" + detail::id_list(c.set)] = micro(c.dual);
    if (d.strength != 0) j["strength"] = d.strength;
    return j;
}

}  // namespace reevrp::pricing
