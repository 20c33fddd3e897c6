#include "tma/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "tma/construction.hpp"
#include "tma/local_search.hpp"
#include "tma/route_split.hpp"

namespace tma {

void SolverParams::check() const {
    evolution.check();
    if (k_nn == 0) throw std::invalid_argument("k_nn must be positive");
    if (bins_optimize < 2) throw std::invalid_argument("bins_optimize must be at least 2");
    if (bins_finish < bins_optimize) throw std::invalid_argument("bins_finish must be at least bins_optimize");
    if (!(budget_multiplier > 0.0)) throw std::invalid_argument("budget multiplier must be positive");
}

std::size_t evaluation_budget(const Instance& inst, const SolverParams& params) {
    const double n = static_cast<double>(inst.num_customers() + inst.num_stations() + 1);
    return static_cast<std::size_t>(std::floor(params.budget_multiplier * n));
}

TrilevelEvaluator::TrilevelEvaluator(const Instance& inst, const StationPathTable& table, int bins,
                                     std::size_t budget, bool local_search)
    : inst_(inst), table_(table), bins_(bins), budget_(budget), local_search_(local_search) {}

void TrilevelEvaluator::assign_routes(Genotype& g) {
    if (!g.has_routes()) g.set_boundaries(split(g.perm(), inst_).boundaries());
}

bool TrilevelEvaluator::evaluate(Genotype& g) {
    if (g.fitness() && g.has_routes()) return true;
    if (used_ >= budget_) return false;
    ++used_;

    RoutePlan plan = split(g.perm(), inst_);
    g.set_boundaries(plan.boundaries());
    const std::size_t moved =
        local_search_ ? local_search(g, Move::TwoOpt, inst_) + local_search(g, Move::Swap, inst_) : 0;
    if (moved > 0) {
        plan = split(g.perm(), inst_);
        g.set_boundaries(plan.boundaries());
    }
    const auto charged = repair_solution(plan, bins_, inst_, table_);
    const double fitness = charged ? charged->total_distance : kInfeasible;
    g.set_fitness(fitness);
    best_seen_ = std::min(best_seen_, fitness);
    return true;
}

std::optional<ChargedSolution> charge_genotype(const Genotype& g, int bins, const Instance& inst,
                                               const StationPathTable& table) {
    RoutePlan plan;
    if (g.has_routes()) {
        const auto& b = g.boundaries();
        for (std::size_t r = 0; r + 1 < b.size(); ++r)
            plan.routes.emplace_back(g.perm().begin() + static_cast<std::ptrdiff_t>(b[r]),
                                     g.perm().begin() + static_cast<std::ptrdiff_t>(b[r + 1]));
    } else {
        plan = split(g.perm(), inst);
    }
    return repair_solution(plan, bins, inst, table);
}

RunResult solve(const Instance& inst, const SolverParams& params, std::uint64_t seed) {
    const StationPathTable table(inst);
    return solve(inst, table, params, seed);
}

RunResult solve(const Instance& inst, const StationPathTable& table, const SolverParams& params,
                std::uint64_t seed) {
    params.check();
    const auto start = std::chrono::steady_clock::now();

    RunResult result;
    result.seed = seed;
    result.budget = evaluation_budget(inst, params);

    Rng rng(seed);
    TrilevelEvaluator evaluator(inst, table, params.bins_optimize, result.budget, params.local_search);

    std::vector<Genotype> pop;
    for (Genotype& g : initial_population(inst, params.evolution.population_size, params.k_nn, rng)) {
        if (!evaluator.evaluate(g)) break;
        pop.push_back(std::move(g));
    }
    if (pop.empty()) throw NoFeasibleSolution("evaluation budget too small to evaluate any individual");
    sort_population(pop);
    result.history.push_back(pop.front().fitness().value_or(kInfeasible));

    while (evaluator.remaining() > 0 &&
           (!params.max_generations || result.generations < *params.max_generations)) {
        const std::size_t before = evaluator.used();
        pop = evolve_generation(std::move(pop), params.evolution, evaluator, rng);
        ++result.generations;
        sort_population(pop);
        result.history.push_back(pop.front().fitness().value_or(kInfeasible));
        // Nothing new could be bred (tiny instances where every distinct
        // permutation is already present).
        if (evaluator.used() == before) break;
    }

    const Genotype& best = pop.front();
    if (!best.fitness() || std::isinf(*best.fitness()))
        throw NoFeasibleSolution("no individual admits a battery-feasible charging plan");

    auto coarse = charge_genotype(best, params.bins_optimize, inst, table);
    auto fine = charge_genotype(best, params.bins_finish, inst, table);
    result.pre_finish_cost = coarse->total_distance;
    result.best = (fine && fine->total_distance <= coarse->total_distance) ? std::move(*fine) : std::move(*coarse);
    result.best_cost = result.best.total_distance;
    result.best_perm = best.perm();
    result.evaluations_used = evaluator.used();
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

RunSummary summarize(std::string name, std::vector<RunResult> results) {
    RunSummary s;
    s.name = std::move(name);
    s.runs = results.size();
    if (!results.empty()) {
        s.min = kInfeasible;
        double sum = 0.0, evals = 0.0, secs = 0.0;
        for (const auto& r : results) {
            s.min = std::min(s.min, r.best_cost);
            sum += r.best_cost;
            evals += static_cast<double>(r.evaluations_used);
            secs += r.wall_seconds;
        }
        const double n = static_cast<double>(results.size());
        s.mean = sum / n;
        s.avg_evals = evals / n;
        s.avg_seconds = secs / n;
        if (results.size() > 1) {
            double ss = 0.0;
            for (const auto& r : results) ss += (r.best_cost - s.mean) * (r.best_cost - s.mean);
            s.std = std::sqrt(ss / (n - 1.0));
        }
    }
    s.results = std::move(results);
    return s;
}

RunSummary run_experiment(const Instance& inst, const SolverParams& params, std::span<const std::uint64_t> seeds,
                          std::size_t parallel) {
    const StationPathTable table(inst);
    std::vector<RunResult> results(seeds.size());
    std::vector<std::exception_ptr> errors(seeds.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            try {
                results[i] = solve(inst, table, params, seeds[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(parallel, 1, std::max<std::size_t>(seeds.size(), 1));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return summarize(inst.name(), std::move(results));
}

}  // namespace tma
