#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tma/instance.hpp"
#include "tma/solution.hpp"

// Exhaustive references for tiny inputs. They share no code with the dynamic
// programs they check, and the solver never calls them.
namespace tma::oracles {

struct SplitResult {
    double cost = kInfeasible;
    std::vector<std::vector<int>> routes;
};

// Every one of the 2^(n-1) depot insertion patterns, filtered by capacity.
SplitResult brute_split(std::span<const int> perm, const Instance& inst);

struct ChargeResult {
    double cost = kInfeasible;
    std::vector<int> visits;  // depot ... depot
};

// Continuous-battery optimum for a fixed route: every sequence of up to
// max_insertions chargers (stations or depot) on each leg, with full recharge
// at each. Labels that are worse in both cost and battery are pruned between
// legs, which leaves the optimum intact.
ChargeResult brute_charge(std::span<const int> customers, const Instance& inst, std::size_t max_insertions = 3);

// Global optimum over all customer orders, split patterns and charging
// sequences (up to max_insertions per leg). Infinite cost if infeasible.
struct EvrpResult {
    double cost = kInfeasible;
    ChargedSolution solution;
};

EvrpResult brute_evrp(const Instance& inst, std::size_t max_insertions = 3);

}  // namespace tma::oracles
