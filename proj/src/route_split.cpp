#include "tma/route_split.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

namespace tma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Cell {
    double cost = kInf;
    int routes = 0;
};

bool better(const Cell& a, const Cell& b) {
    return a.cost < b.cost || (a.cost == b.cost && a.routes < b.routes);
}

enum Pred : std::uint8_t { kNone = 0, kContinue = 1, kRestock = 2 };

}  // namespace

double route_cost(std::span<const int> route, const Instance& inst) {
    if (route.empty()) return 0.0;
    double cost = inst.distance(inst.depot(), route.front());
    for (std::size_t k = 1; k < route.size(); ++k) cost += inst.distance(route[k - 1], route[k]);
    return cost + inst.distance(route.back(), inst.depot());
}

RoutePlan split(std::span<const int> perm, const Instance& inst) {
    RoutePlan plan;
    const std::size_t n = perm.size();
    if (n == 0) return plan;

    int g = inst.capacity();
    for (int c : perm) {
        if (inst.demand(c) > inst.capacity())
            throw InfeasibleDemand("demand of customer " + std::to_string(inst.node(c).file_id) + " exceeds capacity");
        g = std::gcd(g, inst.demand(c));
    }
    const int cap = inst.capacity() / g;
    const std::size_t width = static_cast<std::size_t>(cap) + 1;
    const int depot = inst.depot();

    std::vector<Cell> prev(width), cur(width);
    prev[static_cast<std::size_t>(cap)] = {0.0, 1};
    std::vector<std::uint8_t> pred(n * width, kNone);
    std::vector<int> restock_src(n, -1);

    for (std::size_t j = 0; j < n; ++j) {
        const int c = perm[j];
        const int d = inst.demand(c) / g;
        const int from = j == 0 ? depot : perm[j - 1];
        const double leg = inst.distance(from, c);
        std::fill(cur.begin(), cur.end(), Cell{});
        std::uint8_t* p = &pred[j * width];

        // Drive on from the previous customer.
        for (int i = 0; i + d <= cap; ++i) {
            const Cell& src = prev[static_cast<std::size_t>(i + d)];
            if (src.cost == kInf) continue;
            cur[static_cast<std::size_t>(i)] = {src.cost + leg, src.routes};
            p[i] = kContinue;
        }

        // Return to the depot, restock, then serve c.
        if (j > 0) {
            int best = -1;
            for (int i = 0; i <= cap; ++i) {
                const Cell& src = prev[static_cast<std::size_t>(i)];
                if (src.cost == kInf) continue;
                if (best < 0 || better(src, prev[static_cast<std::size_t>(best)])) best = i;
            }
            if (best >= 0) {
                const Cell& src = prev[static_cast<std::size_t>(best)];
                const Cell cand{src.cost + inst.distance(from, depot) + inst.distance(depot, c), src.routes + 1};
                Cell& dst = cur[static_cast<std::size_t>(cap - d)];
                if (better(cand, dst)) {
                    dst = cand;
                    p[cap - d] = kRestock;
                    restock_src[j] = best;
                }
            }
        }
        std::swap(prev, cur);
    }

    const int last = perm[n - 1];
    int best = -1;
    Cell best_cell;
    for (int i = 0; i <= cap; ++i) {
        const Cell& c = prev[static_cast<std::size_t>(i)];
        if (c.cost == kInf) continue;
        const Cell closed{c.cost + inst.distance(last, depot), c.routes};
        if (best < 0 || better(closed, best_cell)) {
            best = i;
            best_cell = closed;
        }
    }

    std::vector<std::size_t> starts;
    int i = best;
    for (std::size_t j = n; j-- > 0;) {
        const std::uint8_t kind = pred[j * width + static_cast<std::size_t>(i)];
        if (kind == kContinue) {
            i += inst.demand(perm[j]) / g;
        } else {
            starts.push_back(j);
            i = restock_src[j];
        }
    }
    // starts now holds route start offsets in reverse; j == 0 always starts a route.
    std::reverse(starts.begin(), starts.end());
    if (starts.empty() || starts.front() != 0) starts.insert(starts.begin(), 0);
    starts.push_back(n);

    for (std::size_t r = 0; r + 1 < starts.size(); ++r)
        plan.routes.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(starts[r]),
                                 perm.begin() + static_cast<std::ptrdiff_t>(starts[r + 1]));
    plan.split_cost = best_cell.cost;
    return plan;
}

double split_cost_lower_bound(std::span<const int> perm, const Instance& inst) {
    if (perm.empty()) return 0.0;
    const int depot = inst.depot();
    double path = inst.distance(depot, perm.front()) + inst.distance(perm.back(), depot);
    double farthest = 0.0;
    for (std::size_t k = 0; k < perm.size(); ++k) {
        if (k) path += inst.distance(perm[k - 1], perm[k]);
        farthest = std::max(farthest, inst.distance(depot, perm[k]));
    }
    return std::max(path, 2.0 * farthest);
}

}  // namespace tma
