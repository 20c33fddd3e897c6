#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tma/instance.hpp"

namespace tma::test {

struct Point {
    double x, y;
};

struct CustomerDef {
    double x, y;
    int demand;
};

// Depot gets file id 1, customers 2.., stations after the customers.
inline Instance make_instance(Point depot, const std::vector<CustomerDef>& customers,
                              const std::vector<Point>& stations, int capacity, double battery,
                              double consumption, std::string name = "fixture") {
    InstanceData d;
    d.name = std::move(name);
    d.capacity = capacity;
    d.battery = battery;
    d.consumption = consumption;
    int id = 0;
    d.nodes.push_back({id, id + 1, NodeKind::Depot, depot.x, depot.y});
    d.demand.push_back(0);
    for (const auto& c : customers) {
        ++id;
        d.nodes.push_back({id, id + 1, NodeKind::Customer, c.x, c.y});
        d.demand.push_back(c.demand);
    }
    for (const auto& s : stations) {
        ++id;
        d.nodes.push_back({id, id + 1, NodeKind::Station, s.x, s.y});
        d.demand.push_back(0);
    }
    return Instance(std::move(d));
}

// The four-node fixture: depot (0,0), customers (1,0) and (2,0) with demand 1,
// station (1,1); Q = 2, B = 10, h = 1.
inline const char* kTinyFile = R"(NAME: tiny
TYPE: EVRP
DIMENSION: 3
STATIONS: 1
CAPACITY: 2
ENERGY_CAPACITY: 10
ENERGY_CONSUMPTION: 1
EDGE_WEIGHT_TYPE: EUC_2D
NODE_COORD_SECTION
1 0 0
2 1 0
3 2 0
4 1 1
DEMAND_SECTION
1 0
2 1
3 1
STATIONS_COORD_SECTION
4
DEPOT_SECTION
1
-1
EOF
)";

struct RandomParams {
    std::size_t customers = 6;
    std::size_t stations = 2;
    int capacity = 10;
    int max_demand = 4;
    double extent = 100.0;
    // Battery as a multiple of the largest depot round trip.
    double battery_factor_lo = 0.6;
    double battery_factor_hi = 1.4;
    double consumption = 1.0;
};

inline Instance random_instance(std::uint64_t seed, const RandomParams& shape) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.0, shape.extent);
    std::uniform_int_distribution<int> demand(1, shape.max_demand);
    std::uniform_real_distribution<double> factor(shape.battery_factor_lo, shape.battery_factor_hi);

    const Point depot{coord(rng), coord(rng)};
    std::vector<CustomerDef> cs;
    double far = 0.0;
    for (std::size_t i = 0; i < shape.customers; ++i) {
        CustomerDef c{coord(rng), coord(rng), demand(rng)};
        far = std::max(far, std::hypot(c.x - depot.x, c.y - depot.y));
        cs.push_back(c);
    }
    std::vector<Point> ss;
    for (std::size_t i = 0; i < shape.stations; ++i) ss.push_back({coord(rng), coord(rng)});
    const double battery = std::max(1.0, factor(rng) * 2.0 * far * shape.consumption);
    return make_instance(depot, cs, ss, shape.capacity, battery, shape.consumption,
                         "random-" + std::to_string(seed));
}

}  // namespace tma::test
