#include "tma/oracles.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tma::oracles {

SplitResult brute_split(std::span<const int> perm, const Instance& inst) {
    SplitResult best;
    const std::size_t n = perm.size();
    if (n == 0) {
        best.cost = 0.0;
        return best;
    }
    if (n > 20) throw std::invalid_argument("brute_split: permutation too long");
    const int depot = inst.depot();
    const std::size_t patterns = std::size_t{1} << (n - 1);
    for (std::size_t mask = 0; mask < patterns; ++mask) {
        // Bit k set: return to the depot between perm[k] and perm[k + 1].
        double cost = inst.distance(depot, perm[0]);
        int load = inst.demand(perm[0]);
        bool ok = load <= inst.capacity();
        for (std::size_t k = 1; k < n && ok; ++k) {
            if (mask >> (k - 1) & 1U) {
                cost += inst.distance(perm[k - 1], depot) + inst.distance(depot, perm[k]);
                load = 0;
            } else {
                cost += inst.distance(perm[k - 1], perm[k]);
            }
            load += inst.demand(perm[k]);
            ok = load <= inst.capacity();
        }
        if (!ok) continue;
        cost += inst.distance(perm[n - 1], depot);
        if (cost < best.cost) {
            best.cost = cost;
            best.routes.assign(1, {perm[0]});
            for (std::size_t k = 1; k < n; ++k) {
                if (mask >> (k - 1) & 1U) best.routes.emplace_back();
                best.routes.back().push_back(perm[k]);
            }
        }
    }
    return best;
}

namespace {

struct Label {
    double battery;
    double cost;
    std::vector<int> visits;
};

void prune(std::vector<Label>& labels) {
    std::sort(labels.begin(), labels.end(), [](const Label& a, const Label& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.battery > b.battery;
    });
    std::vector<Label> kept;
    double best_battery = -1.0;
    for (auto& l : labels) {
        if (l.battery > best_battery) {
            best_battery = l.battery;
            kept.push_back(std::move(l));
        }
    }
    labels = std::move(kept);
}

// Extends `label` (standing at `from`) to `to` through every charger sequence
// of length <= depth.
void extend(const Instance& inst, const std::vector<int>& chargers, const Label& label, int from, int to,
            std::size_t depth, std::vector<Label>& out) {
    const double e = inst.energy(from, to);
    if (label.battery - e >= 0.0) {
        Label next = label;
        next.battery = label.battery - e;
        next.cost += inst.distance(from, to);
        next.visits.push_back(to);
        if (inst.is_charger(to)) next.battery = inst.battery();
        out.push_back(std::move(next));
    }
    if (depth == 0) return;
    for (int s : chargers) {
        if (s == from || s == to) continue;
        const double es = inst.energy(from, s);
        if (label.battery - es < 0.0) continue;
        Label at = label;
        at.battery = inst.battery();
        at.cost += inst.distance(from, s);
        at.visits.push_back(s);
        extend(inst, chargers, at, s, to, depth - 1, out);
    }
}

}  // namespace

ChargeResult brute_charge(std::span<const int> customers, const Instance& inst, std::size_t max_insertions) {
    std::vector<int> chargers = inst.stations();
    chargers.push_back(inst.depot());
    std::sort(chargers.begin(), chargers.end());

    std::vector<int> nodes{inst.depot()};
    nodes.insert(nodes.end(), customers.begin(), customers.end());
    nodes.push_back(inst.depot());

    std::vector<Label> labels{{inst.battery(), 0.0, {inst.depot()}}};
    for (std::size_t j = 1; j < nodes.size() && !labels.empty(); ++j) {
        std::vector<Label> next;
        for (const Label& l : labels) extend(inst, chargers, l, nodes[j - 1], nodes[j], max_insertions, next);
        prune(next);
        labels = std::move(next);
    }

    ChargeResult best;
    for (const Label& l : labels) {
        if (l.cost < best.cost) {
            best.cost = l.cost;
            best.visits = l.visits;
        }
    }
    return best;
}

EvrpResult brute_evrp(const Instance& inst, std::size_t max_insertions) {
    EvrpResult best;
    std::vector<int> perm = inst.customers();
    if (perm.size() > 8) throw std::invalid_argument("brute_evrp: too many customers");
    if (perm.empty()) {
        best.cost = 0.0;
        return best;
    }
    std::sort(perm.begin(), perm.end());
    std::map<std::vector<int>, ChargeResult> memo;
    auto charged = [&](const std::vector<int>& route) -> const ChargeResult& {
        auto it = memo.find(route);
        if (it == memo.end()) it = memo.emplace(route, brute_charge(route, inst, max_insertions)).first;
        return it->second;
    };

    const std::size_t n = perm.size();
    const std::size_t patterns = std::size_t{1} << (n - 1);
    do {
        for (std::size_t mask = 0; mask < patterns; ++mask) {
            std::vector<std::vector<int>> routes{{perm[0]}};
            for (std::size_t k = 1; k < n; ++k) {
                if (mask >> (k - 1) & 1U) routes.emplace_back();
                routes.back().push_back(perm[k]);
            }
            bool ok = true;
            for (const auto& r : routes) {
                int load = 0;
                for (int c : r) load += inst.demand(c);
                if (load > inst.capacity()) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            double cost = 0.0;
            for (const auto& r : routes) {
                cost += charged(r).cost;
                if (cost >= best.cost) break;
            }
            if (cost < best.cost) {
                best.cost = cost;
                std::vector<std::vector<int>> full;
                for (const auto& r : routes) full.push_back(charged(r).visits);
                best.solution = make_solution(std::move(full), inst);
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace tma::oracles
