#pragma once

#include <cstddef>
#include <vector>

#include "tma/instance.hpp"
#include "tma/rng.hpp"
#include "tma/solution.hpp"

namespace tma {

// Nearest-neighbour tour from the depot where each step picks uniformly among
// the k nearest unvisited customers of the last added node (ties by id).
Genotype stochastic_nn(const Instance& inst, std::size_t k, Rng& rng);

// Up to `size` hash-distinct genotypes from stochastic_nn. After 100*size
// attempts the remainder is filled with random permutations, still deduped,
// so tiny instances may yield fewer than `size` members.
std::vector<Genotype> initial_population(const Instance& inst, std::size_t size, std::size_t k, Rng& rng);

Genotype random_genotype(const Instance& inst, Rng& rng);

}  // namespace tma
