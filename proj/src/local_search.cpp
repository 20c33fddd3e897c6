#include "tma/local_search.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace tma {

namespace {

// Moves must gain more than this to count, so rounding noise cannot cycle.
constexpr double kMinGain = 1e-10;

}  // namespace

double intra_route_distance(std::span<const int> route, const Instance& inst) {
    double total = 0.0;
    for (std::size_t k = 1; k < route.size(); ++k) total += inst.distance(route[k - 1], route[k]);
    return total;
}

std::size_t improve_route(std::span<int> route, Move move, const Instance& inst) {
    const std::size_t n = route.size();
    if (n < 2) return 0;
    auto edge = [&](std::size_t p) { return inst.distance(route[p], route[p + 1]); };

    std::size_t applied = 0;
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (move == Move::TwoOpt) {
                    // Reversing route[i..j] only changes the two boundary edges.
                    double before = 0.0, after = 0.0;
                    if (i > 0) {
                        before += edge(i - 1);
                        after += inst.distance(route[i - 1], route[j]);
                    }
                    if (j + 1 < n) {
                        before += edge(j);
                        after += inst.distance(route[i], route[j + 1]);
                    }
                    if (after < before - kMinGain) {
                        std::reverse(route.begin() + static_cast<std::ptrdiff_t>(i),
                                     route.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                        ++applied;
                        improved = true;
                    }
                } else {
                    std::size_t touched[4];
                    std::size_t count = 0;
                    auto touch = [&](std::size_t p) {
                        if (p + 1 >= n) return;
                        for (std::size_t k = 0; k < count; ++k)
                            if (touched[k] == p) return;
                        touched[count++] = p;
                    };
                    if (i > 0) touch(i - 1);
                    touch(i);
                    if (j > 0) touch(j - 1);
                    touch(j);
                    double before = 0.0;
                    for (std::size_t k = 0; k < count; ++k) before += edge(touched[k]);
                    std::swap(route[i], route[j]);
                    double after = 0.0;
                    for (std::size_t k = 0; k < count; ++k) after += edge(touched[k]);
                    if (after < before - kMinGain) {
                        ++applied;
                        improved = true;
                    } else {
                        std::swap(route[i], route[j]);
                    }
                }
            }
        }
    }
    return applied;
}

std::size_t local_search(Genotype& g, Move move, const Instance& inst) {
    if (!g.has_routes()) return 0;
    std::vector<int> perm = g.perm();
    const auto& b = g.boundaries();
    std::size_t applied = 0;
    for (std::size_t r = 0; r + 1 < b.size(); ++r)
        applied += improve_route(std::span<int>(perm).subspan(b[r], b[r + 1] - b[r]), move, inst);
    if (applied > 0) {
        auto bounds = g.boundaries();
        g.set_perm(std::move(perm));
        g.set_boundaries(std::move(bounds));
    }
    return applied;
}

}  // namespace tma
