#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tma/charging.hpp"
#include "tma/evolution.hpp"
#include "tma/instance.hpp"
#include "tma/solution.hpp"

namespace tma {

struct SolverParams {
    EvolutionParams evolution;
    std::size_t k_nn = 3;
    int bins_optimize = 151;
    int bins_finish = 100001;
    double budget_multiplier = 25000.0;
    std::optional<std::size_t> max_generations;
    // Intra-route local search inside every evaluation. Off reduces the
    // evaluation to split and charging.
    bool local_search = true;

    void check() const;
};

class NoFeasibleSolution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// budget_multiplier * (customers + stations + 1), rounded down.
std::size_t evaluation_budget(const Instance& inst, const SolverParams& params);

// The trilevel fitness: split, intra-route local search (2-opt then swap),
// split again, then charging insertion with bins_optimize. Each cache miss
// costs one unit of budget.
class TrilevelEvaluator final : public Evaluator {
public:
    TrilevelEvaluator(const Instance& inst, const StationPathTable& table, int bins, std::size_t budget,
                      bool local_search = true);

    const Instance& instance() const override { return inst_; }
    bool evaluate(Genotype& g) override;
    void assign_routes(Genotype& g) override;

    std::size_t used() const { return used_; }
    std::size_t budget() const { return budget_; }
    std::size_t remaining() const { return budget_ - used_; }
    // Best fitness over every evaluation so far.
    double best_seen() const { return best_seen_; }

private:
    const Instance& inst_;
    const StationPathTable& table_;
    int bins_;
    std::size_t budget_;
    bool local_search_;
    std::size_t used_ = 0;
    double best_seen_ = kInfeasible;
};

// Charges g's routes (from its cached boundaries, or a fresh split) with the
// given bin count.
std::optional<ChargedSolution> charge_genotype(const Genotype& g, int bins, const Instance& inst,
                                               const StationPathTable& table);

struct RunResult {
    ChargedSolution best;
    double best_cost = kInfeasible;
    double pre_finish_cost = kInfeasible;  // same genotype at bins_optimize
    std::vector<int> best_perm;
    std::size_t evaluations_used = 0;
    std::size_t budget = 0;
    std::size_t generations = 0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> history;  // incumbent cost after init and each generation
};

RunResult solve(const Instance& inst, const SolverParams& params, std::uint64_t seed);
RunResult solve(const Instance& inst, const StationPathTable& table, const SolverParams& params,
                std::uint64_t seed);

struct RunSummary {
    std::string name;
    std::size_t runs = 0;
    double min = 0.0;
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation, 0 for a single run
    double avg_evals = 0.0;
    double avg_seconds = 0.0;
    std::vector<RunResult> results;
};

RunSummary summarize(std::string name, std::vector<RunResult> results);

// One solve per seed; up to `parallel` runs at once over the shared instance.
RunSummary run_experiment(const Instance& inst, const SolverParams& params, std::span<const std::uint64_t> seeds,
                          std::size_t parallel = 1);

}  // namespace tma
