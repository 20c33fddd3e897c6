#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tma/instance.hpp"
#include "tma/rng.hpp"
#include "tma/solution.hpp"

namespace tma {

struct EvolutionParams {
    std::size_t population_size = 200;
    double selection_pressure = 1.6;
    std::size_t elite_count = 30;
    double crossover_rate = 0.95;
    double mutation_rate = 0.3;

    // Throws std::invalid_argument when out of range.
    void check() const;
};

// Fitness pipeline used by a generation. Implementations own the evaluation
// budget.
class Evaluator {
public:
    virtual ~Evaluator() = default;
    virtual const Instance& instance() const = 0;
    // Fills fitness and boundaries unless already cached. Returns false, leaving
    // g untouched, once the budget is spent.
    virtual bool evaluate(Genotype& g) = 0;
    // Route boundaries for the operators; never charged to the budget.
    virtual void assign_routes(Genotype& g) = 0;
};

// Stable ascending sort by fitness; unevaluated and infinite fitness last.
void sort_population(std::vector<Genotype>& pop);

// Linear ranking: p(r) = (sp - (2sp - 2)(r - 1)/(N - 1)) / N for rank r = 1
// (best) .. N. Returned in rank order.
std::vector<double> ranking_probabilities(std::size_t n, double pressure);

// Index of a parent drawn from a population sorted best first.
std::size_t rank_select(std::span<const double> probabilities, Rng& rng);
std::size_t rank_select(std::span<const Genotype> sorted_pop, double pressure, Rng& rng);

// Distributed crossover around customer c (or a random one). Parents must
// carry route boundaries. child1 is p1 without the customers of both routes
// containing c, with dedup(sub2 + sub1) inserted at sub1's start; child2 is
// the mirror built from p2 with dedup(rev(sub1) + rev(sub2)). Duplicates keep
// their first occurrence.
std::pair<Genotype, Genotype> distributed_crossover(const Genotype& p1, const Genotype& p2, int customer);
std::pair<Genotype, Genotype> distributed_crossover(const Genotype& p1, const Genotype& p2, Rng& rng);

// Swap the customer at position pos with its nearest customer on another
// route. Identity with fewer than two routes.
Genotype heuristic_swap(const Genotype& g, std::size_t pos, const Instance& inst);
Genotype heuristic_swap(const Genotype& g, const Instance& inst, Rng& rng);

// Move the nearest customer on another route to just after position pos.
Genotype heuristic_move(const Genotype& g, std::size_t pos, const Instance& inst);
Genotype heuristic_move(const Genotype& g, const Instance& inst, Rng& rng);

// One generation: elites carried unchanged, the rest bred by rank selection,
// crossover, mutation and evaluation, rejecting hash duplicates. pop must be
// evaluated. If the budget runs out mid-generation, open slots are filled
// with the best unused members of pop.
std::vector<Genotype> evolve_generation(std::vector<Genotype> pop, const EvolutionParams& params,
                                        Evaluator& evaluator, Rng& rng);

}  // namespace tma
