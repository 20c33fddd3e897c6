#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tma/instance.hpp"
#include "tma/solver.hpp"

namespace tma {

inline constexpr std::string_view kCsvHeader = "name,min,mean,std,runs,avg_evals,avg_seconds";

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

std::string csv_row(const RunSummary& s);
std::string csv_error_row(std::string_view name);

struct CsvRow {
    std::string name;
    bool error = false;
    double min = 0.0;
    double mean = 0.0;
    double std = 0.0;
    std::size_t runs = 0;
    double avg_evals = 0.0;
    double avg_seconds = 0.0;
};

std::optional<CsvRow> parse_csv_row(std::string_view line);

// JSON report of one run: cost, evaluations, generations, seed, wall time.
std::string run_report_json(const RunResult& r, const Instance& inst);

}  // namespace tma
