#include "tma/solution.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tma {

std::uint64_t genotype_hash(std::span<const int> perm) {
    // splitmix64 finaliser folded over the sequence; order sensitive.
    std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ perm.size();
    for (int c : perm) {
        std::uint64_t z = h + 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(static_cast<std::uint32_t>(c));
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        h = z ^ (z >> 31);
    }
    return h;
}

Genotype::Genotype(std::vector<int> perm) { set_perm(std::move(perm)); }

void Genotype::set_perm(std::vector<int> perm) {
    perm_ = std::move(perm);
    hash_ = genotype_hash(perm_);
    boundaries_.clear();
    fitness_.reset();
}

std::size_t Genotype::route_at(std::size_t pos) const {
    auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), pos);
    return static_cast<std::size_t>(it - boundaries_.begin()) - 1;
}

std::vector<std::size_t> Genotype::route_index_by_position() const {
    std::vector<std::size_t> out(perm_.size(), 0);
    for (std::size_t r = 0; r + 1 < boundaries_.size(); ++r)
        for (std::size_t p = boundaries_[r]; p < boundaries_[r + 1]; ++p) out[p] = r;
    return out;
}

std::vector<std::size_t> RoutePlan::boundaries() const {
    std::vector<std::size_t> b{0};
    for (const auto& r : routes) b.push_back(b.back() + r.size());
    return b;
}

ChargedSolution make_solution(std::vector<std::vector<int>> routes, const Instance& inst) {
    ChargedSolution sol;
    sol.routes = std::move(routes);
    const double full = inst.battery();
    const double cap = inst.capacity();
    for (const auto& route : sol.routes) {
        std::vector<double> battery, cargo;
        double y = full;
        double q = cap;
        for (std::size_t k = 0; k < route.size(); ++k) {
            const int v = route[k];
            if (k > 0 && inst.valid(route[k - 1]) && inst.valid(v)) {
                const double d = inst.distance(route[k - 1], v);
                sol.total_distance += d;
                y -= inst.consumption() * d;
            }
            battery.push_back(y);
            if (inst.valid(v)) {
                if (inst.is_charger(v)) y = full;
                if (v == inst.depot()) q = cap;
                q -= inst.demand(v);
            }
            cargo.push_back(q);
        }
        sol.battery_trace.push_back(std::move(battery));
        sol.cargo_trace.push_back(std::move(cargo));
    }
    return sol;
}

double objective(const ChargedSolution& sol, const Instance& inst) {
    double total = 0.0;
    for (const auto& route : sol.routes)
        for (std::size_t k = 1; k < route.size(); ++k) total += inst.distance(route[k - 1], route[k]);
    return total;
}

const char* to_string(Constraint c) {
    switch (c) {
        case Constraint::CustomerOnce: return "CustomerOnce";
        case Constraint::FlowConservation: return "FlowConservation";
        case Constraint::Battery: return "Battery";
        case Constraint::Cargo: return "Cargo";
        case Constraint::DepotEndpoints: return "DepotEndpoints";
    }
    return "?";
}

bool ViolationReport::has(Constraint c) const {
    return std::any_of(violations.begin(), violations.end(), [c](const Violation& v) { return v.constraint == c; });
}

namespace {

std::string node_label(const Instance& inst, int v) {
    return inst.valid(v) ? std::to_string(inst.node(v).file_id) : std::string("<invalid>");
}

}  // namespace

ViolationReport validate(const ChargedSolution& sol, const Instance& inst) {
    ViolationReport report;
    auto add = [&](Constraint c, std::string where) { report.violations.push_back({c, std::move(where)}); };

    std::vector<int> visits(inst.size(), 0);
    const double tol = kBatteryTolerance * std::max(1.0, inst.battery());

    for (std::size_t r = 0; r < sol.routes.size(); ++r) {
        const auto& route = sol.routes[r];
        const std::string rname = "route " + std::to_string(r + 1);
        if (route.size() < 2) {
            add(Constraint::DepotEndpoints, rname + ": fewer than two visits");
            continue;
        }
        if (route.front() != inst.depot()) add(Constraint::DepotEndpoints, rname + ": does not start at the depot");
        if (route.back() != inst.depot()) add(Constraint::DepotEndpoints, rname + ": does not end at the depot");

        bool structural = true;
        for (std::size_t k = 0; k < route.size(); ++k) {
            const int v = route[k];
            if (!inst.valid(v)) {
                add(Constraint::FlowConservation, rname + ", position " + std::to_string(k) + ": unknown node");
                structural = false;
                continue;
            }
            if (k > 0 && route[k - 1] == v)
                add(Constraint::FlowConservation,
                    rname + ", position " + std::to_string(k) + ": self loop at node " + node_label(inst, v));
            if (inst.is_customer(v)) ++visits[static_cast<std::size_t>(v)];
        }
        if (!structural) continue;

        double y = inst.battery();
        double q = inst.capacity();
        for (std::size_t k = 0; k < route.size(); ++k) {
            const int v = route[k];
            if (k > 0) {
                y -= inst.energy(route[k - 1], v);
                if (y < -tol) {
                    std::ostringstream os;
                    os << rname << ", leg " << node_label(inst, route[k - 1]) << "->" << node_label(inst, v)
                       << ": battery " << y;
                    add(Constraint::Battery, os.str());
                }
            }
            if (inst.is_charger(v)) y = inst.battery();
            if (v == inst.depot()) q = inst.capacity();
            q -= inst.demand(v);
            if (q < 0) {
                add(Constraint::Cargo, rname + ", at node " + node_label(inst, v) + ": cargo exceeded by " +
                                           std::to_string(-static_cast<long long>(q)));
                q = 0;  // report each overflow once
            }
        }
    }

    for (int c : inst.customers()) {
        const int n = visits[static_cast<std::size_t>(c)];
        if (n != 1)
            add(Constraint::CustomerOnce,
                "customer " + node_label(inst, c) + " visited " + std::to_string(n) + " times");
    }
    return report;
}

void write_solution_text(std::ostream& out, const ChargedSolution& sol, const Instance& inst) {
    for (const auto& route : sol.routes) {
        for (std::size_t k = 0; k < route.size(); ++k) {
            if (k) out << ' ';
            out << inst.node(route[k]).file_id;
        }
        out << '\n';
    }
    const auto prec = out.precision();
    out << "COST " << std::setprecision(17) << sol.total_distance << '\n';
    out.precision(prec);
}

std::string solution_json(const ChargedSolution& sol, const Instance& inst) {
    nlohmann::json j;
    j["objective"] = sol.total_distance;
    auto routes = nlohmann::json::array();
    for (const auto& route : sol.routes) {
        auto r = nlohmann::json::array();
        for (int v : route) r.push_back(inst.node(v).file_id);
        routes.push_back(std::move(r));
    }
    j["routes"] = std::move(routes);
    j["battery"] = sol.battery_trace;
    j["cargo"] = sol.cargo_trace;
    return j.dump(2);
}

ChargedSolution read_solution(std::istream& in, const Instance& inst) {
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::vector<int>> routes;

    const auto first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
        const auto j = nlohmann::json::parse(content);
        for (const auto& r : j.at("routes")) {
            std::vector<int> route;
            for (const auto& v : r) route.push_back(inst.from_file_id(v.get<int>()));
            routes.push_back(std::move(route));
        }
        return make_solution(std::move(routes), inst);
    }

    std::istringstream lines(content);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        std::vector<int> route;
        bool cost_line = false;
        while (ls >> tok) {
            if (tok == "COST" || tok == "cost") {
                cost_line = true;
                break;
            }
            std::size_t used = 0;
            int id = 0;
            try {
                id = std::stoi(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) throw ParseError(lineno, "malformed node id '" + tok + "'");
            route.push_back(inst.from_file_id(id));
        }
        if (!cost_line && !route.empty()) routes.push_back(std::move(route));
    }
    return make_solution(std::move(routes), inst);
}

}  // namespace tma
