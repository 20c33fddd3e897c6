#include "tma/construction.hpp"

#include <stdexcept>
#include <unordered_set>

namespace tma {

Genotype stochastic_nn(const Instance& inst, std::size_t k, Rng& rng) {
    if (k == 0) throw std::invalid_argument("stochastic_nn: k must be at least 1");
    const std::size_t n = inst.num_customers();
    std::vector<bool> visited(inst.size(), false);
    std::vector<int> perm;
    perm.reserve(n);
    std::vector<int> window;
    window.reserve(k);

    int last = inst.depot();
    while (perm.size() < n) {
        window.clear();
        for (int c : inst.nearest_customers(last)) {
            if (visited[static_cast<std::size_t>(c)]) continue;
            window.push_back(c);
            if (window.size() == k) break;
        }
        const int next = window[rng.below(window.size())];
        visited[static_cast<std::size_t>(next)] = true;
        perm.push_back(next);
        last = next;
    }
    return Genotype(std::move(perm));
}

Genotype random_genotype(const Instance& inst, Rng& rng) {
    std::vector<int> perm = inst.customers();
    rng.shuffle(perm);
    return Genotype(std::move(perm));
}

std::vector<Genotype> initial_population(const Instance& inst, std::size_t size, std::size_t k, Rng& rng) {
    std::vector<Genotype> pop;
    pop.reserve(size);
    std::unordered_set<std::uint64_t> seen;
    const std::size_t cap = 100 * size;

    for (std::size_t attempt = 0; attempt < cap && pop.size() < size; ++attempt) {
        Genotype g = stochastic_nn(inst, k, rng);
        if (seen.insert(g.hash()).second) pop.push_back(std::move(g));
    }
    for (std::size_t attempt = 0; attempt < cap && pop.size() < size; ++attempt) {
        Genotype g = random_genotype(inst, rng);
        if (seen.insert(g.hash()).second) pop.push_back(std::move(g));
    }
    return pop;
}

}  // namespace tma
