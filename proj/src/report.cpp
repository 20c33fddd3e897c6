#include "tma/report.hpp"

#include <charconv>
#include <vector>

#include "json.hpp"

namespace tma {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string csv_row(const RunSummary& s) {
    return s.name + ',' + format_double(s.min) + ',' + format_double(s.mean) + ',' + format_double(s.std) + ',' +
           std::to_string(s.runs) + ',' + format_double(s.avg_evals) + ',' + format_double(s.avg_seconds);
}

std::string csv_error_row(std::string_view name) { return std::string(name) + ",ERROR,,,0,,"; }

namespace {

bool parse_number(std::string_view tok, double& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size() && !tok.empty();
}

}  // namespace

std::optional<CsvRow> parse_csv_row(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    if (cells.size() != 7) return std::nullopt;
    CsvRow row;
    row.name = std::string(cells[0]);
    if (cells[1] == "ERROR") {
        row.error = true;
        return row;
    }
    double runs = 0.0;
    if (!parse_number(cells[1], row.min) || !parse_number(cells[2], row.mean) || !parse_number(cells[3], row.std) ||
        !parse_number(cells[4], runs) || !parse_number(cells[5], row.avg_evals) ||
        !parse_number(cells[6], row.avg_seconds))
        return std::nullopt;
    row.runs = static_cast<std::size_t>(runs);
    return row;
}

std::string run_report_json(const RunResult& r, const Instance& inst) {
    nlohmann::json j;
    j["instance"] = inst.name();
    j["cost"] = r.best_cost;
    j["cost_before_finish"] = r.pre_finish_cost;
    j["evaluations"] = r.evaluations_used;
    j["budget"] = r.budget;
    j["generations"] = r.generations;
    j["seed"] = r.seed;
    j["wall_seconds"] = r.wall_seconds;
    j["routes"] = r.best.routes.size();
    return j.dump();
}

}  // namespace tma
