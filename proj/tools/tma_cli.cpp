// Command line front end: solve, bench and validate.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tma/instance.hpp"
#include "tma/oracles.hpp"
#include "tma/report.hpp"
#include "tma/solution.hpp"
#include "tma/solver.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitViolations = 3;

struct SolverFlags {
    tma::SolverParams params;
    std::size_t max_generations = 0;
    bool no_local_search = false;
};

void add_solver_flags(CLI::App& cmd, SolverFlags& f) {
    auto& p = f.params;
    cmd.add_option("--population", p.evolution.population_size, "population size")->capture_default_str();
    cmd.add_option("--elites", p.evolution.elite_count, "elite individuals carried per generation")
        ->capture_default_str();
    cmd.add_option("--pressure", p.evolution.selection_pressure, "linear ranking selection pressure")
        ->capture_default_str();
    cmd.add_option("--crossover-rate", p.evolution.crossover_rate)->capture_default_str();
    cmd.add_option("--mutation-rate", p.evolution.mutation_rate)->capture_default_str();
    cmd.add_option("--knn", p.k_nn, "stochastic nearest neighbour candidates")->capture_default_str();
    cmd.add_option("--bins", p.bins_optimize, "battery bins during optimisation")->capture_default_str();
    cmd.add_option("--bins-finish", p.bins_finish, "battery bins for the final repair")->capture_default_str();
    cmd.add_option("--budget-multiplier", p.budget_multiplier, "evaluations per node")->capture_default_str();
    cmd.add_option("--max-generations", f.max_generations, "generation cap");
    cmd.add_flag("--no-local-search", f.no_local_search, "evaluate with split and charging only");
}

tma::SolverParams finish(const CLI::App& cmd, SolverFlags& f) {
    if (cmd.count("--max-generations")) f.params.max_generations = f.max_generations;
    f.params.local_search = !f.no_local_search;
    f.params.check();
    return f.params;
}

bool write_to(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) return false;
    out << text;
    return static_cast<bool>(out);
}

int cmd_solve(const std::string& instance_path, std::uint64_t seed, const tma::SolverParams& params,
              const std::string& out_path, const std::string& format, const std::string& report_path, bool oracle) {
    const tma::Instance inst = tma::load_instance(instance_path);

    tma::RunResult result;
    try {
        result = tma::solve(inst, params, seed);
    } catch (const tma::NoFeasibleSolution& e) {
        std::cerr << "no feasible solution: " << e.what() << '\n';
        return kExitInfeasible;
    }

    std::ostringstream solution;
    if (format == "json") {
        solution << tma::solution_json(result.best, inst) << '\n';
    } else {
        tma::write_solution_text(solution, result.best, inst);
    }
    if (out_path.empty()) {
        std::cout << solution.str();
    } else if (!write_to(out_path, solution.str())) {
        std::cerr << "cannot write '" << out_path << "'\n";
        return kExitError;
    }

    const std::string report = tma::run_report_json(result, inst);
    if (report_path.empty()) {
        std::cerr << report << '\n';
    } else if (!write_to(report_path, report + "\n")) {
        std::cerr << "cannot write '" << report_path << "'\n";
        return kExitError;
    }

    if (oracle) {
        const auto opt = tma::oracles::brute_evrp(inst);
        std::cerr << "oracle optimum " << tma::format_double(opt.cost) << ", solver "
                  << tma::format_double(result.best_cost) << ", gap "
                  << tma::format_double(result.best_cost - opt.cost) << '\n';
    }
    return kExitOk;
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const auto& in : inputs) {
        if (fs::is_directory(in)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(in))
                if (entry.is_regular_file() && entry.path().extension() == ".evrp") found.push_back(entry.path());
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(in);
        }
    }
    return files;
}

int cmd_bench(const std::vector<std::string>& inputs, std::size_t runs, std::uint64_t base_seed,
              std::size_t parallel, const tma::SolverParams& params, const std::string& csv_path,
              const std::string& json_path) {
    std::vector<std::uint64_t> seeds(runs);
    std::iota(seeds.begin(), seeds.end(), base_seed);

    std::ostringstream csv;
    csv << tma::kCsvHeader << '\n';
    nlohmann::json report = nlohmann::json::array();
    bool any_error = false;

    for (const auto& path : expand_inputs(inputs)) {
        const std::string label = fs::path(path).stem().string();
        try {
            const tma::Instance inst = tma::load_instance(path);
            const tma::RunSummary s = tma::run_experiment(inst, params, seeds, parallel);
            const std::string row = csv_row(s);
            csv << row << '\n';
            std::cout << row << std::endl;
            nlohmann::json entry{{"name", s.name},        {"file", path},          {"min", s.min},
                                 {"mean", s.mean},        {"std", s.std},          {"runs", s.runs},
                                 {"avg_evals", s.avg_evals}, {"avg_seconds", s.avg_seconds}};
            auto per_run = nlohmann::json::array();
            for (const auto& r : s.results)
                per_run.push_back(nlohmann::json::parse(tma::run_report_json(r, inst)));
            entry["results"] = std::move(per_run);
            report.push_back(std::move(entry));
        } catch (const std::exception& e) {
            any_error = true;
            const std::string row = tma::csv_error_row(label);
            csv << row << '\n';
            std::cout << row << std::endl;
            std::cerr << path << ": " << e.what() << '\n';
            report.push_back({{"name", label}, {"file", path}, {"error", e.what()}});
        }
    }

    if (!csv_path.empty() && !write_to(csv_path, csv.str())) {
        std::cerr << "cannot write '" << csv_path << "'\n";
        return kExitError;
    }
    if (!json_path.empty() && !write_to(json_path, report.dump(2) + "\n")) {
        std::cerr << "cannot write '" << json_path << "'\n";
        return kExitError;
    }
    return any_error ? kExitError : kExitOk;
}

int cmd_validate(const std::string& instance_path, const std::string& solution_path) {
    const tma::Instance inst = tma::load_instance(instance_path);
    std::ifstream in(solution_path);
    if (!in) {
        std::cerr << "cannot open solution file '" << solution_path << "'\n";
        return kExitError;
    }
    const tma::ChargedSolution sol = tma::read_solution(in, inst);
    const auto report = tma::validate(sol, inst);
    std::cout << "COST " << tma::format_double(sol.total_distance) << '\n';
    for (const auto& v : report.violations) std::cout << to_string(v.constraint) << ": " << v.where << '\n';
    if (report.empty()) {
        std::cout << "feasible\n";
        return kExitOk;
    }
    return kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trilevel memetic solver for the electric vehicle routing problem"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "solve one instance");
    std::string instance_path;
    std::uint64_t seed = 1;
    std::string out_path, format = "text", report_path;
    bool oracle = false;
    SolverFlags solve_flags;
    solve->add_option("instance", instance_path, "instance file")->required();
    solve->add_option("--seed", seed)->capture_default_str();
    solve->add_option("--out", out_path, "solution output file (default stdout)");
    solve->add_option("--format", format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    solve->add_option("--report", report_path, "JSON report file (default stderr)");
    solve->add_flag("--oracle", oracle, "compare against exhaustive search (tiny instances only)");
    add_solver_flags(*solve, solve_flags);

    auto* bench = app.add_subcommand("bench", "seeded benchmark runs over instances");
    std::vector<std::string> inputs;
    std::size_t runs = 20, parallel = 1;
    std::uint64_t base_seed = 1;
    std::string csv_path, json_path;
    SolverFlags bench_flags;
    bench->add_option("inputs", inputs, "instance files or directories")->required();
    bench->add_option("--runs", runs)->capture_default_str();
    bench->add_option("--seeds", base_seed, "base seed; run i uses base + i")->capture_default_str();
    bench->add_option("--parallel", parallel, "concurrent runs")->capture_default_str();
    bench->add_option("--csv", csv_path);
    bench->add_option("--json", json_path);
    add_solver_flags(*bench, bench_flags);

    auto* check = app.add_subcommand("validate", "check a solution file against an instance");
    std::string solution_path;
    check->add_option("instance", instance_path)->required();
    check->add_option("solution", solution_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*solve)
            return cmd_solve(instance_path, seed, finish(*solve, solve_flags), out_path, format, report_path, oracle);
        if (*bench)
            return cmd_bench(inputs, std::max<std::size_t>(runs, 1), base_seed, parallel, finish(*bench, bench_flags),
                             csv_path, json_path);
        if (*check) return cmd_validate(instance_path, solution_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
