#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tma/instance.hpp"

namespace tma {

inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();

std::uint64_t genotype_hash(std::span<const int> perm);

// A customer permutation (giant tour) plus data derived from its latest
// evaluation: route boundaries and fitness. Any change of the permutation
// drops both caches.
class Genotype {
public:
    Genotype() = default;
    explicit Genotype(std::vector<int> perm);

    const std::vector<int>& perm() const { return perm_; }
    std::size_t size() const { return perm_.size(); }
    std::uint64_t hash() const { return hash_; }

    void set_perm(std::vector<int> perm);

    // Route start offsets into perm followed by perm.size(); e.g. {0, 2, 5}
    // describes routes [0,2) and [2,5).
    const std::vector<std::size_t>& boundaries() const { return boundaries_; }
    bool has_routes() const { return !boundaries_.empty(); }
    std::size_t num_routes() const { return boundaries_.empty() ? 0 : boundaries_.size() - 1; }
    void set_boundaries(std::vector<std::size_t> b) { boundaries_ = std::move(b); }

    // Index of the route containing perm position pos. Requires has_routes().
    std::size_t route_at(std::size_t pos) const;
    std::vector<std::size_t> route_index_by_position() const;

    const std::optional<double>& fitness() const { return fitness_; }
    void set_fitness(double f) { fitness_ = f; }

    bool operator==(const Genotype& other) const = default;

private:
    std::vector<int> perm_;
    std::vector<std::size_t> boundaries_;
    std::optional<double> fitness_;
    std::uint64_t hash_ = 0;
};

// Partition of a permutation into depot-delimited routes (customers only).
struct RoutePlan {
    std::vector<std::vector<int>> routes;
    double split_cost = 0.0;

    std::vector<std::size_t> boundaries() const;
};

// Full routes including depot endpoints and charging visits, with the residual
// battery and cargo on arrival at each visit.
struct ChargedSolution {
    std::vector<std::vector<int>> routes;
    double total_distance = 0.0;
    std::vector<std::vector<double>> battery_trace;
    std::vector<std::vector<double>> cargo_trace;

    bool operator==(const ChargedSolution& other) const = default;
};

// Builds a ChargedSolution from full routes, recomputing distance and traces
// with a forward simulation (full recharge at depot and stations).
ChargedSolution make_solution(std::vector<std::vector<int>> routes, const Instance& inst);

// Sum of consecutive-pair distances over all routes.
double objective(const ChargedSolution& sol, const Instance& inst);

enum class Constraint { CustomerOnce, FlowConservation, Battery, Cargo, DepotEndpoints };

const char* to_string(Constraint c);

struct Violation {
    Constraint constraint;
    std::string where;
};

struct ViolationReport {
    std::vector<Violation> violations;

    bool empty() const { return violations.empty(); }
    bool has(Constraint c) const;
};

// Battery tolerance used by validate, relative to max(1, B).
inline constexpr double kBatteryTolerance = 1e-9;

ViolationReport validate(const ChargedSolution& sol, const Instance& inst);

// Text form: one route per line as file node ids, then "COST <value>".
void write_solution_text(std::ostream& out, const ChargedSolution& sol, const Instance& inst);
std::string solution_json(const ChargedSolution& sol, const Instance& inst);

// Reads either the text or the JSON form. File ids are mapped back to dense
// ids; unknown ids are kept as -1 so validate can report them.
ChargedSolution read_solution(std::istream& in, const Instance& inst);

}  // namespace tma
