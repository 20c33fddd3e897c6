#pragma once

#include <span>
#include <stdexcept>

#include "tma/instance.hpp"
#include "tma/solution.hpp"

namespace tma {

class InfeasibleDemand : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Optimal capacity-feasible partition of a customer sequence into
// depot-delimited routes, preserving order and minimising total distance
// (battery ignored). Dynamic program over (residual cargo, prefix length);
// demands and capacity are divided by their gcd first, which leaves the
// optimum unchanged and shrinks the table.
RoutePlan split(std::span<const int> perm, const Instance& inst);

// Cheap lower bound on split(perm).split_cost.
double split_cost_lower_bound(std::span<const int> perm, const Instance& inst);

// Depot-inclusive distance of a single route of customers.
double route_cost(std::span<const int> route, const Instance& inst);

}  // namespace tma
