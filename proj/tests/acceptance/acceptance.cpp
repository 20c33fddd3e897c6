// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
//   acceptance [all|wcci|synthetic]
//
// The wcci group needs the competition files (E-n22-k4.evrp, ...) in
// $TMA_DATA_DIR, or in data/wcci2020 when the variable is unset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "tma/charging.hpp"
#include "tma/local_search.hpp"
#include "tma/oracles.hpp"
#include "tma/report.hpp"
#include "tma/route_split.hpp"
#include "tma/solver.hpp"

namespace fs = std::filesystem;
using namespace tma;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool pass = false;
    std::string detail;
};

// Every ChargedSolution produced by the suite goes through here (criterion 7).
struct FeasibilityLog {
    std::size_t checked = 0;
    std::vector<std::string> failures;

    void check(const ChargedSolution& sol, const Instance& inst, const std::string& where) {
        ++checked;
        const auto report = validate(sol, inst);
        if (!report.empty())
            failures.push_back(where + ": " + to_string(report.violations.front().constraint) + " at " +
                               report.violations.front().where);
    }
} g_feasibility;

fs::path data_dir() {
    if (const char* env = std::getenv("TMA_DATA_DIR")) return env;
    return TMA_DEFAULT_DATA_DIR;
}

std::size_t worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<std::uint64_t> seeds_1_to(std::uint64_t n) {
    std::vector<std::uint64_t> s(n);
    for (std::uint64_t k = 0; k < n; ++k) s[k] = k + 1;
    return s;
}

// --- criteria 1-3 ---------------------------------------------------------

struct Benchmark {
    RunSummary summary;
    std::string error;
};

Benchmark run_benchmark(const std::string& file) {
    Benchmark b;
    const fs::path path = data_dir() / file;
    if (!fs::exists(path)) {
        b.error = "missing " + path.string();
        return b;
    }
    try {
        const Instance inst = load_instance(path.string());
        const auto seeds = seeds_1_to(10);
        b.summary = run_experiment(inst, SolverParams{}, seeds, worker_count());
        for (const auto& r : b.summary.results)
            g_feasibility.check(r.best, inst, file + " seed " + std::to_string(r.seed));
    } catch (const std::exception& e) {
        b.error = e.what();
    }
    return b;
}

std::string describe(const RunSummary& s) {
    std::ostringstream out;
    out << "min " << format_double(s.min) << " mean " << format_double(s.mean) << " std " << format_double(s.std)
        << " avg_evals " << format_double(s.avg_evals) << " avg_seconds " << format_double(s.avg_seconds);
    return out.str();
}

Verdict criterion_1() {
    const Benchmark b = run_benchmark("E-n22-k4.evrp");
    if (!b.error.empty()) return {false, b.error};
    std::size_t hits = 0;
    for (const auto& r : b.summary.results) hits += std::abs(r.best_cost - 384.67) <= 0.01;
    const bool ok = std::abs(b.summary.min - 384.67) <= 0.01 && hits >= 8;
    return {ok, "E22 " + describe(b.summary) + ", " + std::to_string(hits) + "/10 runs at 384.67"};
}

Verdict criterion_2() {
    Verdict v{true, ""};
    for (const auto& [file, target] : std::vector<std::pair<std::string, double>>{{"E-n23-k3.evrp", 571.94},
                                                                                  {"E-n30-k3.evrp", 509.47}}) {
        const Benchmark b = run_benchmark(file);
        if (!b.error.empty()) {
            v.pass = false;
            v.detail += b.error + "; ";
            continue;
        }
        v.pass = v.pass && std::abs(b.summary.min - target) <= 0.01;
        v.detail += file + " " + describe(b.summary) + " (target " + format_double(target) + "); ";
    }
    return v;
}

Verdict criterion_3() {
    const Benchmark b = run_benchmark("E-n51-k5.evrp");
    if (!b.error.empty()) return {false, b.error};
    return {b.summary.min <= 540.50, "E51 " + describe(b.summary) + " (bound 540.50)"};
}

// --- criterion 4 -----------------------------------------------------------

Verdict criterion_4() {
    struct Large {
        const char* file;
        std::size_t dimension;
        std::size_t stations;
    };
    const std::vector<Large> sets{{"X-n143-k7.evrp", 143, 4},
                                  {"X-n214-k11.evrp", 214, 9},
                                  {"X-n573-k30.evrp", 573, 6},
                                  {"X-n916-k207.evrp", 916, 9},
                                  {"X-n1001-k43.evrp", 1001, 9}};
    Verdict v{true, ""};
    for (const auto& set : sets) {
        // The real file when present, otherwise a generated file of the same size.
        const fs::path real = data_dir() / set.file;
        std::string text;
        std::string source = "generated";
        if (fs::exists(real)) {
            std::ifstream in(real);
            std::stringstream s;
            s << in.rdbuf();
            text = s.str();
            source = "file";
        } else {
            const Instance gen = test::random_instance(
                set.dimension, {.customers = set.dimension - 1,
                                .stations = set.stations,
                                .capacity = 100,
                                .max_demand = 30,
                                .extent = 1000,
                                .battery_factor_lo = 1.1,
                                .battery_factor_hi = 1.1});
            std::ostringstream out;
            write_instance(out, gen);
            text = out.str();
        }

        std::string solution_text;
        {
            std::istringstream in(text);
            const Instance inst = parse_instance(in);
            const StationPathTable table(inst);
            const auto sol = repair_solution(split(inst.customers(), inst), 1001, inst, table);
            if (!sol) {
                v.pass = false;
                v.detail += std::string(set.file) + ": no charging plan for the synthetic solution; ";
                continue;
            }
            std::ostringstream out;
            write_solution_text(out, *sol, inst);
            solution_text = out.str();
        }

        const auto t0 = Clock::now();
        std::istringstream in(text);
        const Instance inst = parse_instance(in);
        std::istringstream sol_in(solution_text);
        const ChargedSolution sol = read_solution(sol_in, inst);
        const bool feasible = validate(sol, inst).empty();
        const double secs = seconds_since(t0);
        g_feasibility.check(sol, inst, set.file);

        v.pass = v.pass && feasible && secs < 1.0;
        v.detail += std::string(set.file) + " (" + source + ", " + std::to_string(inst.size()) + " nodes) " +
                    format_double(std::round(secs * 1e4) / 1e4) + " s" + (feasible ? "" : " INFEASIBLE") + "; ";
    }
    return v;
}

// --- criterion 5 -----------------------------------------------------------

Verdict criterion_5() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<std::size_t> size(1, 10);
    std::uniform_int_distribution<int> cap(1, 10);
    int mismatches = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int q = cap(rng);
        const Instance inst = test::random_instance(
            50000 + static_cast<std::uint64_t>(trial),
            {.customers = size(rng), .stations = 0, .capacity = q, .max_demand = q});
        std::vector<int> perm = inst.customers();
        std::shuffle(perm.begin(), perm.end(), rng);
        const double dp = split(perm, inst).split_cost;
        const double brute = oracles::brute_split(perm, inst).cost;
        worst = std::max(worst, std::abs(dp - brute));
        mismatches += std::abs(dp - brute) > 1e-9;
    }
    const double secs = seconds_since(t0);
    return {mismatches == 0 && secs < 10.0, "200 cases, " + std::to_string(mismatches) + " mismatches, max |diff| " +
                                                format_double(worst) + ", " + format_double(std::round(secs * 1e3) / 1e3) +
                                                " s"};
}

// --- criterion 6 -----------------------------------------------------------

Verdict criterion_6() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<std::size_t> len(1, 3);
    std::uniform_int_distribution<std::size_t> stations(1, 3);
    int non_monotone = 0, too_far = 0, below_oracle = 0, infeasible_mismatch = 0, charged = 0, feasible = 0;
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const Instance inst = test::random_instance(
            60000 + static_cast<std::uint64_t>(trial),
            {.customers = len(rng), .stations = stations(rng), .capacity = 20, .max_demand = 4,
             .battery_factor_lo = 0.45, .battery_factor_hi = 0.9});
        const StationPathTable table(inst);
        std::vector<int> route = inst.customers();
        std::shuffle(route.begin(), route.end(), rng);
        const double brute = oracles::brute_charge(route, inst, 3).cost;
        double last = kInfeasible;
        for (int k : {11, 51, 151, 1001, 100001}) {
            const auto r = insert_stations(route, k, inst, table);
            const double cost = r ? r->cost : kInfeasible;
            non_monotone += cost > last + 1e-9;
            below_oracle += cost < brute - 1e-9;
            if (r) g_feasibility.check(make_solution({r->visits}, inst), inst, "charging fixture " + std::to_string(trial));
            last = cost;
        }
        if (std::isfinite(brute)) {
            ++feasible;
            too_far += !(last <= 1.001 * brute);
            worst_ratio = std::max(worst_ratio, last / brute);
            charged += brute > route_cost(route, inst) + 1e-9;
        } else {
            infeasible_mismatch += std::isfinite(last);
        }
    }
    const double secs = seconds_since(t0);
    const bool ok = non_monotone == 0 && too_far == 0 && below_oracle == 0 && infeasible_mismatch == 0 && secs < 60.0;
    std::ostringstream d;
    d << "50 routes (" << feasible << " feasible, " << charged << " need charging), " << non_monotone
      << " monotonicity breaks, " << too_far << " above 1.001x oracle, worst ratio " << format_double(worst_ratio)
      << ", " << format_double(std::round(secs * 1e3) / 1e3) << " s";
    return {ok, d.str()};
}

// --- criterion 8 -----------------------------------------------------------

Verdict criterion_8() {
    const auto t0 = Clock::now();
    int exact = 0, within_1pct = 0, cases = 0;
    // Same instances with local search switched off; reported, not judged.
    int exact_plain = 0;
    SolverParams plain;
    plain.local_search = false;
    std::string misses;
    for (std::uint64_t seed = 8000; cases < 20; ++seed) {
        const Instance inst = test::random_instance(
            seed, {.customers = 4 + seed % 3, .stations = 1 + seed % 2, .capacity = 10, .max_demand = 4});
        const auto opt = oracles::brute_evrp(inst);
        if (!std::isfinite(opt.cost)) continue;  // only instances with a solution
        ++cases;
        const RunResult r = solve(inst, SolverParams{}, seed);
        g_feasibility.check(r.best, inst, "oracle instance " + std::to_string(seed));
        const double gap = r.best_cost - opt.cost;
        exact += std::abs(gap) <= 1e-6;
        within_1pct += gap <= 0.01 * opt.cost;
        const RunResult q = solve(inst, plain, seed);
        g_feasibility.check(q.best, inst, "oracle instance " + std::to_string(seed) + " without local search");
        exact_plain += std::abs(q.best_cost - opt.cost) <= 1e-6;
        if (std::abs(gap) > 1e-6) misses += " seed " + std::to_string(seed) + " gap " + format_double(gap) + ";";
    }
    const double secs = seconds_since(t0);
    return {exact >= 18 && within_1pct == 20,
            std::to_string(exact) + "/20 match within 1e-6, " + std::to_string(within_1pct) + "/20 within 1%, " +
                format_double(std::round(secs * 10) / 10) + " s;" + misses + " without local search " +
                std::to_string(exact_plain) + "/20 match"};
}

// --- criterion 9 -----------------------------------------------------------

Verdict criterion_9() {
    SolverParams params;
    params.evolution.population_size = 60;
    params.evolution.elite_count = 10;
    params.budget_multiplier = 300;
    int differences = 0, runs = 0;
    for (std::uint64_t seed : {91u, 92u, 93u}) {
        const Instance inst = test::random_instance(
            seed, {.customers = 25, .stations = 4, .capacity = 20, .battery_factor_lo = 1.0, .battery_factor_hi = 1.2});
        const RunResult a = solve(inst, params, seed);
        const RunResult b = solve(inst, params, seed);
        const std::vector<std::uint64_t> seeds{seed, seed};
        const RunSummary par = run_experiment(inst, params, seeds, 2);
        for (const RunResult* r : {&a, &b, &par.results[0], &par.results[1]}) {
            g_feasibility.check(r->best, inst, "determinism seed " + std::to_string(seed));
            ++runs;
            differences += r->best_cost != a.best_cost || r->best.routes != a.best.routes ||
                           r->evaluations_used != a.evaluations_used || r->history != a.history;
        }
    }
    return {differences == 0, std::to_string(runs) + " runs over 3 seeds, " + std::to_string(differences) +
                                  " differ from the first run of their seed"};
}

// --- criterion 10 ----------------------------------------------------------

Verdict criterion_10() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1010);
    int rising = 0, stalled = 0, not_idempotent = 0, moved_routes = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Instance inst = test::random_instance(
            100000 + static_cast<std::uint64_t>(trial % 50),
            {.customers = 20, .stations = 0, .capacity = 15, .max_demand = 5});
        std::vector<int> perm = inst.customers();
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto bounds = split(perm, inst).boundaries();
        const Move move = trial % 2 ? Move::Swap : Move::TwoOpt;
        Genotype g(perm);
        g.set_boundaries(bounds);
        auto total = [&](const Genotype& x) {
            double s = 0.0;
            for (std::size_t r = 0; r + 1 < bounds.size(); ++r)
                s += intra_route_distance(std::span<const int>(x.perm()).subspan(bounds[r], bounds[r + 1] - bounds[r]),
                                          inst);
            return s;
        };
        const double before = total(g);
        const std::size_t moves = local_search(g, move, inst);
        const double after = total(g);
        rising += after > before;
        stalled += moves > 0 && !(after < before);
        for (std::size_t r = 0; r + 1 < bounds.size(); ++r) {
            std::vector<int> a(perm.begin() + static_cast<std::ptrdiff_t>(bounds[r]),
                               perm.begin() + static_cast<std::ptrdiff_t>(bounds[r + 1]));
            std::vector<int> b(g.perm().begin() + static_cast<std::ptrdiff_t>(bounds[r]),
                               g.perm().begin() + static_cast<std::ptrdiff_t>(bounds[r + 1]));
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            moved_routes += a != b;
        }
        const auto once = g.perm();
        not_idempotent += local_search(g, move, inst) != 0 || g.perm() != once;
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << "1000 genotypes, " << rising << " increases, " << stalled << " non-improving passes, " << not_idempotent
      << " not idempotent, " << moved_routes << " route membership changes, "
      << format_double(std::round(secs * 1e3) / 1e3) << " s";
    return {rising == 0 && stalled == 0 && not_idempotent == 0 && moved_routes == 0 && secs < 10.0, d.str()};
}

Verdict criterion_7() {
    std::string detail = std::to_string(g_feasibility.checked) + " solutions validated, " +
                         std::to_string(g_feasibility.failures.size()) + " with violations";
    for (const auto& f : g_feasibility.failures) detail += "; " + f;
    return {g_feasibility.checked > 0 && g_feasibility.failures.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string group = argc > 1 ? argv[1] : "all";
    if (group != "all" && group != "wcci" && group != "synthetic") {
        std::cerr << "usage: acceptance [all|wcci|synthetic]\n";
        return 2;
    }
    const bool wcci = group != "synthetic";
    const bool synthetic = group != "wcci";

    std::map<int, Verdict> verdicts;
    auto run = [&](int id, const std::function<Verdict()>& f) {
        try {
            verdicts[id] = f();
        } catch (const std::exception& e) {
            verdicts[id] = {false, std::string("exception: ") + e.what()};
        }
    };
    if (wcci) {
        run(1, criterion_1);
        run(2, criterion_2);
        run(3, criterion_3);
    }
    if (synthetic) {
        run(4, criterion_4);
        run(5, criterion_5);
        run(6, criterion_6);
        run(8, criterion_8);
        run(9, criterion_9);
        run(10, criterion_10);
        run(7, criterion_7);
    }

    bool all_pass = true;
    for (const auto& [id, v] : verdicts) {
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << v.detail << '\n';
        all_pass = all_pass && v.pass;
    }
    return all_pass ? 0 : 1;
}
