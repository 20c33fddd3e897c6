#include <gtest/gtest.h>

#include "json.hpp"

#include "fixtures.hpp"
#include "tma/report.hpp"

using namespace tma;

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(384.67), "384.67");
    EXPECT_EQ(format_double(0.0), "0");
    EXPECT_EQ(format_double(0.1 + 0.2), "0.30000000000000004");
    for (double v : {1e-300, 3.141592653589793, 12345678.9, 2.0 / 3.0}) EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(Csv, RowsRoundTrip) {
    std::vector<RunResult> rs(2);
    rs[0].best_cost = 384.67;
    rs[1].best_cost = 385.0 + 1.0 / 3.0;
    rs[0].evaluations_used = 750000;
    rs[1].evaluations_used = 600001;
    rs[0].wall_seconds = 1.25;
    const RunSummary s = summarize("E-n22-k4", rs);
    const std::string line = csv_row(s);
    const auto back = parse_csv_row(line);
    ASSERT_TRUE(back);
    EXPECT_FALSE(back->error);
    EXPECT_EQ(back->name, s.name);
    EXPECT_EQ(back->min, s.min);
    EXPECT_EQ(back->mean, s.mean);
    EXPECT_EQ(back->std, s.std);
    EXPECT_EQ(back->runs, s.runs);
    EXPECT_EQ(back->avg_evals, s.avg_evals);
    EXPECT_EQ(back->avg_seconds, s.avg_seconds);
}

TEST(Csv, SingleRunHasZeroStd) {
    std::vector<RunResult> rs(1);
    rs[0].best_cost = 10;
    const auto back = parse_csv_row(csv_row(summarize("one", rs)));
    ASSERT_TRUE(back);
    EXPECT_EQ(back->std, 0.0);
}

TEST(Csv, ErrorRowsAndGarbage) {
    const auto e = parse_csv_row(csv_error_row("broken"));
    ASSERT_TRUE(e);
    EXPECT_TRUE(e->error);
    EXPECT_EQ(e->name, "broken");
    EXPECT_FALSE(parse_csv_row("a,b"));
    EXPECT_FALSE(parse_csv_row("x,1,2,3,four,5,6"));
    EXPECT_EQ(kCsvHeader, "name,min,mean,std,runs,avg_evals,avg_seconds");
}

TEST(RunReport, Fields) {
    const Instance inst = test::make_instance({0, 0}, {{3, 4, 1}}, {}, 5, 20, 1, "solo");
    RunResult r;
    r.best = make_solution({{0, 1, 0}}, inst);
    r.best_cost = 10;
    r.evaluations_used = 7;
    r.generations = 2;
    r.seed = 99;
    const auto j = nlohmann::json::parse(run_report_json(r, inst));
    EXPECT_EQ(j.at("instance"), "solo");
    EXPECT_EQ(j.at("cost"), 10.0);
    EXPECT_EQ(j.at("evaluations"), 7);
    EXPECT_EQ(j.at("generations"), 2);
    EXPECT_EQ(j.at("seed"), 99);
    EXPECT_TRUE(j.contains("wall_seconds"));
}
