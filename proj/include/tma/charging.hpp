#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "tma/instance.hpp"
#include "tma/solution.hpp"

namespace tma {

// Discretisation of the battery into K levels 0..K-1; level i holds
// i * B / (K - 1) energy. Consumption always rounds up, so anything feasible
// in bins is feasible for the real battery.
class BinScale {
public:
    BinScale(int bins, double battery);

    int bins() const { return bins_; }
    int full() const { return bins_ - 1; }
    double bin_energy() const { return bin_energy_; }
    int bins_for(double energy) const;

private:
    int bins_;
    double bin_energy_;
};

// Shortest charger-to-charger distances where every hop is drivable on a full
// battery. Chargers are the stations plus the depot (which also recharges),
// ordered by node id.
class StationPathTable {
public:
    explicit StationPathTable(const Instance& inst);

    std::size_t size() const { return chargers_.size(); }
    const std::vector<int>& chargers() const { return chargers_; }
    int charger(std::size_t k) const { return chargers_[k]; }

    // Indices are charger indices, not node ids.
    double cost(std::size_t from, std::size_t to) const { return cost_[from * size() + to]; }

    // Node ids visited from `from` to `to`, both included. Empty if unreachable.
    std::vector<int> path(std::size_t from, std::size_t to) const;

private:
    std::vector<int> chargers_;
    std::vector<double> cost_;
    std::vector<int> pred_;  // predecessor charger index on the shortest path, -1 if none
};

StationPathTable build_station_table(const Instance& inst);

struct ChargedRoute {
    std::vector<int> visits;  // depot ... depot, stations included
    double cost = 0.0;
};

// Optimal (for the given K) insertion of charging visits into a fixed route.
// `customers` is the route without depot endpoints. nullopt if the route
// cannot be driven even with charging.
std::optional<ChargedRoute> insert_stations(std::span<const int> customers, int bins, const Instance& inst,
                                            const StationPathTable& table);

// insert_stations on every route of the plan; nullopt if any route fails.
std::optional<ChargedSolution> repair_solution(const RoutePlan& plan, int bins, const Instance& inst,
                                               const StationPathTable& table);

}  // namespace tma
