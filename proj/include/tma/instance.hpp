#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tma {

enum class NodeKind { Depot, Customer, Station };

struct Node {
    int id = 0;       // dense 0-based index
    int file_id = 0;  // id as written in the instance file
    NodeKind kind = NodeKind::Customer;
    double x = 0.0;
    double y = 0.0;
};

// Raised by the instance parser; carries the 1-based source line (0 when the
// problem is not tied to a single line, e.g. a missing section).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Plain description used to build an Instance. Node ids are dense 0-based.
struct InstanceData {
    std::string name;
    std::vector<Node> nodes;
    std::vector<int> demand;  // indexed by node id; zero for depot and stations
    int capacity = 0;
    double battery = 0.0;
    double consumption = 0.0;
    std::optional<int> declared_vehicles;
    std::optional<double> declared_optimum;
};

// Immutable EVRP instance. Distances are exact Euclidean doubles, precomputed
// into a dense symmetric matrix. Safe to share between concurrent runs.
class Instance {
public:
    explicit Instance(InstanceData data);

    const std::string& name() const { return name_; }
    std::size_t size() const { return nodes_.size(); }
    const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    const std::vector<Node>& nodes() const { return nodes_; }

    int depot() const { return depot_; }
    const std::vector<int>& customers() const { return customers_; }
    const std::vector<int>& stations() const { return stations_; }
    std::size_t num_customers() const { return customers_.size(); }
    std::size_t num_stations() const { return stations_.size(); }

    int demand(int i) const { return demand_[static_cast<std::size_t>(i)]; }
    int capacity() const { return capacity_; }
    double battery() const { return battery_; }
    double consumption() const { return consumption_; }
    std::optional<int> declared_vehicles() const { return declared_vehicles_; }
    std::optional<double> declared_optimum() const { return declared_optimum_; }

    double distance(int i, int j) const {
        return dist_[static_cast<std::size_t>(i) * nodes_.size() + static_cast<std::size_t>(j)];
    }
    double energy(int i, int j) const { return consumption_ * distance(i, j); }

    // Customers other than i ordered by (distance from i, id).
    const std::vector<int>& nearest_customers(int i) const {
        return neighbours_[static_cast<std::size_t>(i)];
    }

    bool is_customer(int i) const { return node(i).kind == NodeKind::Customer; }
    bool is_charger(int i) const { return node(i).kind != NodeKind::Customer; }
    bool valid(int i) const { return i >= 0 && static_cast<std::size_t>(i) < nodes_.size(); }

    // Dense id of a file id, or -1.
    int from_file_id(int file_id) const;

    InstanceData data() const;

private:
    std::string name_;
    std::vector<Node> nodes_;
    std::vector<int> demand_;
    int capacity_;
    double battery_;
    double consumption_;
    std::optional<int> declared_vehicles_;
    std::optional<double> declared_optimum_;

    int depot_ = -1;
    std::vector<int> customers_;
    std::vector<int> stations_;
    std::vector<double> dist_;
    std::vector<std::vector<int>> neighbours_;
    std::vector<int> file_to_dense_;
};

Instance parse_instance(std::istream& in);
Instance load_instance(const std::string& path);

// Writes the instance in the same TSPLIB-style format parse_instance reads.
void write_instance(std::ostream& out, const Instance& inst);

}  // namespace tma
