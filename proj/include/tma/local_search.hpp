#pragma once

#include <cstddef>
#include <span>

#include "tma/instance.hpp"
#include "tma/solution.hpp"

namespace tma {

enum class Move { TwoOpt, Swap };

// Sum of customer-to-customer distances along the sequence (no depot legs).
double intra_route_distance(std::span<const int> route, const Instance& inst);

// Improves the customer order inside each route of g (routes taken from its
// cached boundaries) with first-improvement 2-opt or swap moves until no
// improving move remains. Deltas only count customer-to-customer edges.
// Route membership and boundaries are kept; the fitness cache is dropped if
// anything moved. Returns the number of applied moves.
std::size_t local_search(Genotype& g, Move move, const Instance& inst);

// Same on a raw sequence treated as one route.
std::size_t improve_route(std::span<int> route, Move move, const Instance& inst);

}  // namespace tma
