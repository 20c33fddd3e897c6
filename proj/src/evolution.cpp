#include "tma/evolution.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "tma/construction.hpp"

namespace tma {

void EvolutionParams::check() const {
    if (population_size == 0) throw std::invalid_argument("population size must be positive");
    if (selection_pressure < 1.0 || selection_pressure > 2.0)
        throw std::invalid_argument("selection pressure must lie in [1, 2]");
    if (elite_count >= population_size) throw std::invalid_argument("elite count must be below population size");
    if (crossover_rate < 0.0 || crossover_rate > 1.0) throw std::invalid_argument("crossover rate must be in [0, 1]");
    if (mutation_rate < 0.0 || mutation_rate > 1.0) throw std::invalid_argument("mutation rate must be in [0, 1]");
}

void sort_population(std::vector<Genotype>& pop) {
    std::stable_sort(pop.begin(), pop.end(), [](const Genotype& a, const Genotype& b) {
        const double fa = a.fitness().value_or(kInfeasible);
        const double fb = b.fitness().value_or(kInfeasible);
        return fa < fb;
    });
}

std::vector<double> ranking_probabilities(std::size_t n, double pressure) {
    if (n == 0) return {};
    if (n == 1) return {1.0};
    std::vector<double> p(n);
    const double nn = static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r)
        p[r] = (pressure - (2.0 * pressure - 2.0) * static_cast<double>(r) / (nn - 1.0)) / nn;
    return p;
}

std::size_t rank_select(std::span<const double> probabilities, Rng& rng) {
    double u = rng.uniform();
    for (std::size_t r = 0; r < probabilities.size(); ++r) {
        u -= probabilities[r];
        if (u < 0.0) return r;
    }
    return probabilities.size() - 1;
}

std::size_t rank_select(std::span<const Genotype> sorted_pop, double pressure, Rng& rng) {
    const auto p = ranking_probabilities(sorted_pop.size(), pressure);
    return rank_select(p, rng);
}

namespace {

struct Segment {
    std::size_t begin;
    std::size_t end;
};

Segment route_containing(const Genotype& g, int customer) {
    const auto& perm = g.perm();
    const auto it = std::find(perm.begin(), perm.end(), customer);
    if (it == perm.end()) throw std::invalid_argument("crossover customer not in parent");
    const std::size_t pos = static_cast<std::size_t>(it - perm.begin());
    if (!g.has_routes()) throw std::invalid_argument("crossover parents need route boundaries");
    const std::size_t r = g.route_at(pos);
    return {g.boundaries()[r], g.boundaries()[r + 1]};
}

std::vector<int> dedup(const std::vector<int>& seq) {
    std::vector<int> out;
    std::unordered_set<int> seen;
    for (int c : seq)
        if (seen.insert(c).second) out.push_back(c);
    return out;
}

Genotype rebuild(const std::vector<int>& parent, const std::unordered_set<int>& removed, std::size_t at,
                 const std::vector<int>& block) {
    std::vector<int> rest;
    rest.reserve(parent.size());
    for (int c : parent)
        if (!removed.count(c)) rest.push_back(c);
    at = std::min(at, rest.size());
    rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(at), block.begin(), block.end());
    return Genotype(std::move(rest));
}

}  // namespace

std::pair<Genotype, Genotype> distributed_crossover(const Genotype& p1, const Genotype& p2, int customer) {
    const Segment s1 = route_containing(p1, customer);
    const Segment s2 = route_containing(p2, customer);
    const auto& a = p1.perm();
    const auto& b = p2.perm();
    const std::vector<int> sub1(a.begin() + static_cast<std::ptrdiff_t>(s1.begin),
                                a.begin() + static_cast<std::ptrdiff_t>(s1.end));
    const std::vector<int> sub2(b.begin() + static_cast<std::ptrdiff_t>(s2.begin),
                                b.begin() + static_cast<std::ptrdiff_t>(s2.end));

    std::unordered_set<int> removed(sub1.begin(), sub1.end());
    removed.insert(sub2.begin(), sub2.end());

    std::vector<int> block1 = sub2;
    block1.insert(block1.end(), sub1.begin(), sub1.end());
    std::vector<int> block2(sub1.rbegin(), sub1.rend());
    block2.insert(block2.end(), sub2.rbegin(), sub2.rend());

    return {rebuild(a, removed, s1.begin, dedup(block1)), rebuild(b, removed, s2.begin, dedup(block2))};
}

std::pair<Genotype, Genotype> distributed_crossover(const Genotype& p1, const Genotype& p2, Rng& rng) {
    const int customer = p1.perm()[rng.below(p1.size())];
    return distributed_crossover(p1, p2, customer);
}

namespace {

// Position of the nearest customer (by distance from perm[pos]) on a different
// route, or perm.size() when there is none.
std::size_t nearest_other_route(const Genotype& g, std::size_t pos, const Instance& inst) {
    const auto& perm = g.perm();
    const auto route = g.route_index_by_position();
    std::vector<std::size_t> where(inst.size(), perm.size());
    for (std::size_t p = 0; p < perm.size(); ++p) where[static_cast<std::size_t>(perm[p])] = p;
    for (int c : inst.nearest_customers(perm[pos])) {
        const std::size_t q = where[static_cast<std::size_t>(c)];
        if (q < perm.size() && route[q] != route[pos]) return q;
    }
    return perm.size();
}

}  // namespace

Genotype heuristic_swap(const Genotype& g, std::size_t pos, const Instance& inst) {
    if (g.num_routes() < 2) return g;
    const std::size_t other = nearest_other_route(g, pos, inst);
    if (other == g.size()) return g;
    std::vector<int> perm = g.perm();
    std::swap(perm[pos], perm[other]);
    return Genotype(std::move(perm));
}

Genotype heuristic_swap(const Genotype& g, const Instance& inst, Rng& rng) {
    if (g.num_routes() < 2) return g;
    return heuristic_swap(g, rng.below(g.size()), inst);
}

Genotype heuristic_move(const Genotype& g, std::size_t pos, const Instance& inst) {
    if (g.num_routes() < 2) return g;
    const std::size_t other = nearest_other_route(g, pos, inst);
    if (other == g.size()) return g;
    std::vector<int> perm = g.perm();
    const int anchor = perm[pos];
    const int moved = perm[other];
    perm.erase(perm.begin() + static_cast<std::ptrdiff_t>(other));
    const auto it = std::find(perm.begin(), perm.end(), anchor);
    perm.insert(it + 1, moved);
    return Genotype(std::move(perm));
}

Genotype heuristic_move(const Genotype& g, const Instance& inst, Rng& rng) {
    if (g.num_routes() < 2) return g;
    return heuristic_move(g, rng.below(g.size()), inst);
}

namespace {

constexpr int kMaxAttempts = 20;

}  // namespace

std::vector<Genotype> evolve_generation(std::vector<Genotype> pop, const EvolutionParams& params,
                                        Evaluator& evaluator, Rng& rng) {
    const Instance& inst = evaluator.instance();
    sort_population(pop);
    const auto probs = ranking_probabilities(pop.size(), params.selection_pressure);

    std::vector<Genotype> next;
    next.reserve(params.population_size);
    std::unordered_set<std::uint64_t> hashes;
    const std::size_t elites = std::min(params.elite_count, pop.size());
    for (std::size_t e = 0; e < elites; ++e)
        if (hashes.insert(pop[e].hash()).second) next.push_back(pop[e]);

    std::deque<Genotype> pending;
    auto breed = [&]() -> Genotype {
        if (pending.empty()) {
            const Genotype& a = pop[rank_select(probs, rng)];
            const Genotype& b = pop[rank_select(probs, rng)];
            if (rng.chance(params.crossover_rate)) {
                auto [c1, c2] = distributed_crossover(a, b, rng);
                pending.push_back(std::move(c1));
                pending.push_back(std::move(c2));
            } else {
                pending.push_back(a);
                pending.push_back(b);
            }
        }
        Genotype child = std::move(pending.front());
        pending.pop_front();
        if (rng.chance(params.mutation_rate)) {
            if (!child.has_routes()) evaluator.assign_routes(child);
            child = rng.chance(0.5) ? heuristic_swap(child, inst, rng) : heuristic_move(child, inst, rng);
        }
        return child;
    };

    bool budget_left = true;
    // Evaluates and admits g if it is new. Sets budget_left on exhaustion.
    auto admit = [&](Genotype g) -> bool {
        if (hashes.count(g.hash())) return false;
        if (!evaluator.evaluate(g)) {
            budget_left = false;
            return false;
        }
        if (!hashes.insert(g.hash()).second) return false;
        next.push_back(std::move(g));
        return true;
    };

    while (next.size() < params.population_size && budget_left) {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxAttempts && !placed && budget_left; ++attempt) placed = admit(breed());
        for (int attempt = 0; attempt < kMaxAttempts && !placed && budget_left; ++attempt)
            placed = admit(random_genotype(inst, rng));
        if (!placed) break;  // too few distinct permutations left, or no budget
    }

    for (const Genotype& g : pop) {
        if (next.size() >= params.population_size) break;
        if (g.fitness() && hashes.insert(g.hash()).second) next.push_back(g);
    }
    return next;
}

}  // namespace tma
