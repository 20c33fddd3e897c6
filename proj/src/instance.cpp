#include "tma/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

namespace tma {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

Instance::Instance(InstanceData data)
    : name_(std::move(data.name)),
      nodes_(std::move(data.nodes)),
      demand_(std::move(data.demand)),
      capacity_(data.capacity),
      battery_(data.battery),
      consumption_(data.consumption),
      declared_vehicles_(data.declared_vehicles),
      declared_optimum_(data.declared_optimum) {
    const std::size_t n = nodes_.size();
    if (n == 0) throw std::invalid_argument("instance has no nodes");
    if (demand_.size() != n) throw std::invalid_argument("demand vector size does not match node count");
    if (capacity_ <= 0) throw std::invalid_argument("cargo capacity must be positive");
    if (!(battery_ > 0.0) || !std::isfinite(battery_)) throw std::invalid_argument("battery capacity must be positive");
    if (!(consumption_ > 0.0) || !std::isfinite(consumption_))
        throw std::invalid_argument("consumption rate must be positive");

    int max_file_id = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Node& nd = nodes_[i];
        if (nd.id != static_cast<int>(i)) throw std::invalid_argument("node ids must be dense 0..N-1");
        if (!std::isfinite(nd.x) || !std::isfinite(nd.y)) throw std::invalid_argument("non-finite coordinate");
        max_file_id = std::max(max_file_id, nd.file_id);
        switch (nd.kind) {
            case NodeKind::Depot:
                if (depot_ >= 0) throw std::invalid_argument("more than one depot");
                depot_ = nd.id;
                break;
            case NodeKind::Customer:
                customers_.push_back(nd.id);
                break;
            case NodeKind::Station:
                stations_.push_back(nd.id);
                break;
        }
        if (nd.kind == NodeKind::Customer) {
            if (demand_[i] < 0) throw std::invalid_argument("negative demand");
            if (demand_[i] > capacity_) throw std::invalid_argument("customer demand exceeds cargo capacity");
        } else if (demand_[i] != 0) {
            throw std::invalid_argument("depot and stations must have zero demand");
        }
    }
    if (depot_ < 0) throw std::invalid_argument("instance has no depot");

    file_to_dense_.assign(static_cast<std::size_t>(max_file_id) + 1, -1);
    for (const Node& nd : nodes_) {
        if (nd.file_id < 0) throw std::invalid_argument("negative file id");
        if (file_to_dense_[static_cast<std::size_t>(nd.file_id)] >= 0)
            throw std::invalid_argument("duplicate file id");
        file_to_dense_[static_cast<std::size_t>(nd.file_id)] = nd.id;
    }

    dist_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::hypot(nodes_[i].x - nodes_[j].x, nodes_[i].y - nodes_[j].y);
            dist_[i * n + j] = d;
            dist_[j * n + i] = d;
        }
    }

    neighbours_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& list = neighbours_[i];
        list.reserve(customers_.size());
        for (int c : customers_)
            if (c != static_cast<int>(i)) list.push_back(c);
        const double* row = &dist_[i * n];
        std::sort(list.begin(), list.end(), [row](int a, int b) {
            if (row[a] != row[b]) return row[a] < row[b];
            return a < b;
        });
    }
}

int Instance::from_file_id(int file_id) const {
    if (file_id < 0 || static_cast<std::size_t>(file_id) >= file_to_dense_.size()) return -1;
    return file_to_dense_[static_cast<std::size_t>(file_id)];
}

InstanceData Instance::data() const {
    InstanceData d;
    d.name = name_;
    d.nodes = nodes_;
    d.demand = demand_;
    d.capacity = capacity_;
    d.battery = battery_;
    d.consumption = consumption_;
    d.declared_vehicles = declared_vehicles_;
    d.declared_optimum = declared_optimum_;
    return d;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <typename T>
T number(std::string_view tok, std::size_t line) {
    T value{};
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
        throw ParseError(line, "malformed numeric literal '" + std::string(tok) + "'");
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) throw ParseError(line, "non-finite numeric literal '" + std::string(tok) + "'");
    }
    return value;
}

enum class Section { Header, Coords, Demand, Stations, Depot };

struct RawCoord {
    double x, y;
    std::size_t line;
};

struct RawEntry {
    int file_id;
    std::size_t line;
};

}  // namespace

Instance parse_instance(std::istream& in) {
    std::map<std::string, std::pair<std::string, std::size_t>> header;
    std::map<int, RawCoord> coords;
    std::vector<std::pair<RawEntry, int>> demands;
    std::vector<RawEntry> station_ids;
    std::vector<RawEntry> depot_ids;
    bool depot_terminated = false;
    bool saw_eof = false;

    Section section = Section::Header;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        const std::string key = upper(line);

        if (key == "EOF") {
            saw_eof = true;
            break;
        }
        if (key == "NODE_COORD_SECTION") { section = Section::Coords; continue; }
        if (key == "DEMAND_SECTION") { section = Section::Demand; continue; }
        if (key == "STATIONS_COORD_SECTION") { section = Section::Stations; continue; }
        if (key == "DEPOT_SECTION") { section = Section::Depot; continue; }

        switch (section) {
            case Section::Header: {
                const auto colon = line.find(':');
                if (colon == std::string_view::npos) throw ParseError(lineno, "expected 'KEY: value' header line");
                std::string k = upper(trim(line.substr(0, colon)));
                std::string v(trim(line.substr(colon + 1)));
                header[k] = {std::move(v), lineno};
                break;
            }
            case Section::Coords: {
                const auto tok = tokens(line);
                if (tok.size() != 3) throw ParseError(lineno, "expected 'id x y' in NODE_COORD_SECTION");
                const int id = number<int>(tok[0], lineno);
                const RawCoord c{number<double>(tok[1], lineno), number<double>(tok[2], lineno), lineno};
                if (!coords.emplace(id, c).second) throw ParseError(lineno, "duplicate node id " + std::to_string(id));
                break;
            }
            case Section::Demand: {
                const auto tok = tokens(line);
                if (tok.size() != 2) throw ParseError(lineno, "expected 'id demand' in DEMAND_SECTION");
                demands.push_back({{number<int>(tok[0], lineno), lineno}, number<int>(tok[1], lineno)});
                break;
            }
            case Section::Stations: {
                for (auto tok : tokens(line)) station_ids.push_back({number<int>(tok, lineno), lineno});
                break;
            }
            case Section::Depot: {
                for (auto tok : tokens(line)) {
                    const int id = number<int>(tok, lineno);
                    if (id == -1) {
                        depot_terminated = true;
                    } else if (!depot_terminated) {
                        depot_ids.push_back({id, lineno});
                    }
                }
                break;
            }
        }
    }
    if (!saw_eof) throw ParseError(lineno, "missing EOF terminator");

    auto require = [&](const char* key) -> const std::pair<std::string, std::size_t>& {
        auto it = header.find(key);
        if (it == header.end()) throw ParseError(0, std::string("missing mandatory header key ") + key);
        return it->second;
    };
    const auto& dim = require("DIMENSION");
    const auto& nst = require("STATIONS");
    const auto& cap = require("CAPACITY");
    const auto& bat = require("ENERGY_CAPACITY");
    const auto& con = require("ENERGY_CONSUMPTION");

    InstanceData data;
    const int dimension = number<int>(dim.first, dim.second);
    const int num_stations = number<int>(nst.first, nst.second);
    data.capacity = number<int>(cap.first, cap.second);
    data.battery = number<double>(bat.first, bat.second);
    data.consumption = number<double>(con.first, con.second);
    if (dimension < 1) throw ParseError(dim.second, "DIMENSION must be at least 1");
    if (num_stations < 0) throw ParseError(nst.second, "STATIONS must be non-negative");
    if (data.capacity <= 0) throw ParseError(cap.second, "CAPACITY must be positive");
    if (!(data.battery > 0.0)) throw ParseError(bat.second, "ENERGY_CAPACITY must be positive");
    if (!(data.consumption > 0.0)) throw ParseError(con.second, "ENERGY_CONSUMPTION must be positive");

    if (auto it = header.find("NAME"); it != header.end()) data.name = it->second.first;
    if (auto it = header.find("VEHICLES"); it != header.end())
        data.declared_vehicles = number<int>(it->second.first, it->second.second);
    if (auto it = header.find("OPTIMAL_VALUE"); it != header.end())
        data.declared_optimum = number<double>(it->second.first, it->second.second);
    if (auto it = header.find("EDGE_WEIGHT_TYPE"); it != header.end() && upper(it->second.first) != "EUC_2D")
        throw ParseError(it->second.second, "unsupported EDGE_WEIGHT_TYPE '" + it->second.first + "'");

    const std::size_t expected = static_cast<std::size_t>(dimension) + static_cast<std::size_t>(num_stations);
    if (coords.size() != expected)
        throw ParseError(0, "NODE_COORD_SECTION lists " + std::to_string(coords.size()) + " nodes, expected " +
                                std::to_string(expected) + " (DIMENSION + STATIONS)");

    // Dense ids follow ascending file id order, so 1..N maps to 0..N-1.
    std::map<int, int> dense;
    for (const auto& [fid, c] : coords) {
        const int id = static_cast<int>(dense.size());
        dense[fid] = id;
        data.nodes.push_back({id, fid, NodeKind::Customer, c.x, c.y});
    }
    data.demand.assign(data.nodes.size(), 0);

    if (depot_ids.empty()) throw ParseError(0, "DEPOT_SECTION names no depot");
    if (depot_ids.size() > 1) throw ParseError(depot_ids[1].line, "more than one depot");
    const auto depot_it = dense.find(depot_ids.front().file_id);
    if (depot_it == dense.end())
        throw ParseError(depot_ids.front().line, "depot " + std::to_string(depot_ids.front().file_id) + " is not a node");
    const int depot = depot_it->second;
    data.nodes[static_cast<std::size_t>(depot)].kind = NodeKind::Depot;

    for (const RawEntry& s : station_ids) {
        auto it = dense.find(s.file_id);
        if (it == dense.end()) throw ParseError(s.line, "station " + std::to_string(s.file_id) + " is not a node");
        if (it->second == depot) continue;  // the depot already recharges
        data.nodes[static_cast<std::size_t>(it->second)].kind = NodeKind::Station;
    }

    std::vector<bool> has_demand(data.nodes.size(), false);
    for (const auto& [entry, value] : demands) {
        auto it = dense.find(entry.file_id);
        if (it == dense.end()) throw ParseError(entry.line, "demand for unknown node " + std::to_string(entry.file_id));
        const Node& nd = data.nodes[static_cast<std::size_t>(it->second)];
        if (value < 0) throw ParseError(entry.line, "negative demand");
        if (nd.kind != NodeKind::Customer && value != 0)
            throw ParseError(entry.line, "non-zero demand for depot or station " + std::to_string(entry.file_id));
        if (value > data.capacity)
            throw ParseError(entry.line, "demand " + std::to_string(value) + " of node " +
                                             std::to_string(entry.file_id) + " exceeds capacity " +
                                             std::to_string(data.capacity));
        data.demand[static_cast<std::size_t>(it->second)] = value;
        has_demand[static_cast<std::size_t>(it->second)] = true;
    }

    std::size_t customers = 0;
    for (const Node& nd : data.nodes) {
        if (nd.kind != NodeKind::Customer) continue;
        ++customers;
        if (!has_demand[static_cast<std::size_t>(nd.id)])
            throw ParseError(0, "no demand given for customer " + std::to_string(nd.file_id));
    }
    if (customers + 1 != static_cast<std::size_t>(dimension))
        throw ParseError(dim.second, "DIMENSION " + std::to_string(dimension) + " does not match " +
                                         std::to_string(customers) + " customers plus depot");

    try {
        return Instance(std::move(data));
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
    return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
    const auto flags = out.flags();
    const auto prec = out.precision();
    out << std::setprecision(17);
    out << "NAME: " << inst.name() << '\n';
    out << "TYPE: EVRP\n";
    if (inst.declared_optimum()) out << "OPTIMAL_VALUE: " << *inst.declared_optimum() << '\n';
    if (inst.declared_vehicles()) out << "VEHICLES: " << *inst.declared_vehicles() << '\n';
    out << "DIMENSION: " << inst.num_customers() + 1 << '\n';
    out << "STATIONS: " << inst.num_stations() << '\n';
    out << "CAPACITY: " << inst.capacity() << '\n';
    out << "ENERGY_CAPACITY: " << inst.battery() << '\n';
    out << "ENERGY_CONSUMPTION: " << inst.consumption() << '\n';
    out << "EDGE_WEIGHT_TYPE: EUC_2D\n";
    out << "NODE_COORD_SECTION\n";
    for (const Node& nd : inst.nodes()) out << nd.file_id << ' ' << nd.x << ' ' << nd.y << '\n';
    out << "DEMAND_SECTION\n";
    for (const Node& nd : inst.nodes())
        if (nd.kind != NodeKind::Station) out << nd.file_id << ' ' << inst.demand(nd.id) << '\n';
    out << "STATIONS_COORD_SECTION\n";
    for (int s : inst.stations()) out << inst.node(s).file_id << '\n';
    out << "DEPOT_SECTION\n" << inst.node(inst.depot()).file_id << "\n-1\nEOF\n";
    out.flags(flags);
    out.precision(prec);
}

}  // namespace tma
