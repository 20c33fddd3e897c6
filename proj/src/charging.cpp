#include "tma/charging.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace tma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr double kBinSlack = 1e-9;

constexpr std::int32_t kUnreached = -1;
constexpr std::int32_t kDirect = -2;

}  // namespace

BinScale::BinScale(int bins, double battery) : bins_(bins), bin_energy_(battery / (bins - 1)) {
    if (bins < 2) throw std::invalid_argument("bin count must be at least 2");
}

int BinScale::bins_for(double energy) const {
    if (energy <= 0.0) return 0;
    // Quotients within 1e-9 of an integer are taken as exact, so legs that use
    // a whole number of bins are not pushed up by rounding noise.
    const double b = std::ceil(energy / bin_energy_ - kBinSlack);
    return b > static_cast<double>(bins_) ? bins_ : static_cast<int>(b);
}

StationPathTable::StationPathTable(const Instance& inst) {
    chargers_ = inst.stations();
    chargers_.push_back(inst.depot());
    std::sort(chargers_.begin(), chargers_.end());

    const std::size_t m = chargers_.size();
    cost_.assign(m * m, kInf);
    pred_.assign(m * m, -1);

    // Dijkstra from every charger over the dense hop graph.
    std::vector<bool> done(m);
    for (std::size_t s = 0; s < m; ++s) {
        double* dist = &cost_[s * m];
        int* pred = &pred_[s * m];
        std::fill(done.begin(), done.end(), false);
        dist[s] = 0.0;
        for (;;) {
            std::size_t u = m;
            for (std::size_t k = 0; k < m; ++k)
                if (!done[k] && dist[k] < kInf && (u == m || dist[k] < dist[u])) u = k;
            if (u == m) break;
            done[u] = true;
            for (std::size_t v = 0; v < m; ++v) {
                if (done[v]) continue;
                if (inst.energy(chargers_[u], chargers_[v]) > inst.battery()) continue;
                const double nd = dist[u] + inst.distance(chargers_[u], chargers_[v]);
                if (nd < dist[v]) {
                    dist[v] = nd;
                    pred[v] = static_cast<int>(u);
                }
            }
        }
    }
}

std::vector<int> StationPathTable::path(std::size_t from, std::size_t to) const {
    std::vector<int> out;
    if (cost(from, to) == kInf) return out;
    const int* pred = &pred_[from * size()];
    for (int k = static_cast<int>(to); k >= 0; k = (static_cast<std::size_t>(k) == from ? -1 : pred[k]))
        out.push_back(chargers_[static_cast<std::size_t>(k)]);
    std::reverse(out.begin(), out.end());
    return out;
}

StationPathTable build_station_table(const Instance& inst) { return StationPathTable(inst); }

std::optional<ChargedRoute> insert_stations(std::span<const int> customers, int bins, const Instance& inst,
                                            const StationPathTable& table) {
    const BinScale scale(bins, inst.battery());
    const int full = scale.full();
    const std::size_t width = static_cast<std::size_t>(bins);
    const std::size_t m = table.size();

    std::vector<int> nodes;
    nodes.reserve(customers.size() + 2);
    nodes.push_back(inst.depot());
    nodes.insert(nodes.end(), customers.begin(), customers.end());
    nodes.push_back(inst.depot());
    const std::size_t cols = nodes.size();

    // Per column: predecessor of every bin (kUnreached, kDirect or the exit
    // charger index), and for each exit charger the chosen entry and source bin.
    struct Detour {
        std::int32_t entry = -1;
        std::int32_t source = -1;
    };
    std::vector<std::int32_t> pred(cols * width, kUnreached);
    std::vector<Detour> detours(cols * m);

    std::vector<double> prev(width, kInf), cur(width, kInf);
    prev[static_cast<std::size_t>(full)] = 0.0;

    std::vector<double> suffix(width + 1);
    std::vector<std::int32_t> suffix_arg(width + 1);
    std::vector<double> enter(m);
    std::vector<std::int32_t> enter_src(m);

    for (std::size_t j = 1; j < cols; ++j) {
        const int from = nodes[j - 1];
        const int to = nodes[j];
        std::fill(cur.begin(), cur.end(), kInf);
        std::int32_t* p = &pred[j * width];

        const int leg = scale.bins_for(inst.energy(from, to));
        const double leg_dist = inst.distance(from, to);
        for (int i = 0; i + leg <= full; ++i) {
            const double src = prev[static_cast<std::size_t>(i + leg)];
            if (src == kInf) continue;
            cur[static_cast<std::size_t>(i)] = src + leg_dist;
            p[i] = kDirect;
        }

        // Best residual at or above each level, lowest bin on ties.
        suffix[width] = kInf;
        suffix_arg[width] = -1;
        for (std::size_t i = width; i-- > 0;) {
            if (prev[i] <= suffix[i + 1]) {
                suffix[i] = prev[i];
                suffix_arg[i] = static_cast<std::int32_t>(i);
            } else {
                suffix[i] = suffix[i + 1];
                suffix_arg[i] = suffix_arg[i + 1];
            }
        }

        for (std::size_t a = 0; a < m; ++a) {
            enter[a] = kInf;
            enter_src[a] = -1;
            const int station = table.charger(a);
            if (station == from) continue;
            const int need = scale.bins_for(inst.energy(from, station));
            if (need > full || suffix[static_cast<std::size_t>(need)] == kInf) continue;
            enter[a] = suffix[static_cast<std::size_t>(need)] + inst.distance(from, station);
            enter_src[a] = suffix_arg[static_cast<std::size_t>(need)];
        }

        for (std::size_t b = 0; b < m; ++b) {
            const int exit_station = table.charger(b);
            if (exit_station == to) continue;
            const int out = scale.bins_for(inst.energy(exit_station, to));
            if (out > full) continue;
            double best = kInf;
            std::size_t best_a = m;
            for (std::size_t a = 0; a < m; ++a) {
                if (enter[a] == kInf) continue;
                const double c = enter[a] + table.cost(a, b);
                if (c < best) {
                    best = c;
                    best_a = a;
                }
            }
            if (best_a == m) continue;
            const double cand = best + inst.distance(exit_station, to);
            const std::size_t cell = static_cast<std::size_t>(full - out);
            if (cand < cur[cell]) {
                cur[cell] = cand;
                p[cell] = static_cast<std::int32_t>(b);
                detours[j * m + b] = {static_cast<std::int32_t>(best_a), enter_src[best_a]};
            }
        }
        std::swap(prev, cur);
    }

    std::size_t best = width;
    for (std::size_t i = 0; i < width; ++i)
        if (prev[i] < kInf && (best == width || prev[i] < prev[best])) best = i;
    if (best == width) return std::nullopt;

    ChargedRoute result;
    result.cost = prev[best];

    // Walk back, collecting each column's visits in reverse.
    std::vector<int> rev{nodes[cols - 1]};
    std::int32_t level = static_cast<std::int32_t>(best);
    for (std::size_t j = cols - 1; j >= 1; --j) {
        const std::int32_t kind = pred[j * width + static_cast<std::size_t>(level)];
        if (kind == kDirect) {
            level += scale.bins_for(inst.energy(nodes[j - 1], nodes[j]));
        } else {
            const Detour& d = detours[j * m + static_cast<std::size_t>(kind)];
            const std::vector<int> chain = table.path(static_cast<std::size_t>(d.entry), static_cast<std::size_t>(kind));
            rev.insert(rev.end(), chain.rbegin(), chain.rend());
            level = d.source;
        }
        rev.push_back(nodes[j - 1]);
    }
    result.visits.assign(rev.rbegin(), rev.rend());
    return result;
}

std::optional<ChargedSolution> repair_solution(const RoutePlan& plan, int bins, const Instance& inst,
                                               const StationPathTable& table) {
    std::vector<std::vector<int>> routes;
    routes.reserve(plan.routes.size());
    for (const auto& r : plan.routes) {
        auto charged = insert_stations(r, bins, inst, table);
        if (!charged) return std::nullopt;
        routes.push_back(std::move(charged->visits));
    }
    return make_solution(std::move(routes), inst);
}

}  // namespace tma
