#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hhsrp/bench/experiment.hpp"

using namespace hhsrp;
using namespace hhsrp::bench;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = HHSRP_SOURCE_DIR;

RunRecord record(const std::string& name, int rep, double cost, alns::VariantId v = alns::VariantId::A0) {
    RunRecord r;
    r.instance = name;
    r.variant = v;
    r.replication = rep;
    r.seed = 100 + static_cast<std::uint64_t>(rep);
    r.best_cost = cost;
    r.travel_cost = cost;
    r.valid = true;
    r.iterations = 1000;
    r.wall_seconds = 0.5;
    return r;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string l; std::getline(ss, l);) {
        out.push_back(l);
    }
    return out;
}

// drop the trailing wall-clock column
std::string without_wall(const std::string& csv) {
    std::string out;
    for (const std::string& l : lines(csv)) {
        out += l.substr(0, l.rfind(',')) + "\n";
    }
    return out;
}

} // namespace

TEST(Gaps, EqualRunsHaveNoGap) {
    const GapStats g = gap_stats({500, 500, 500});
    EXPECT_DOUBLE_EQ(g.gap1, 0);
    EXPECT_DOUBLE_EQ(g.gap2, 0);
    EXPECT_DOUBLE_EQ(g.gap1_alt, 0);
}

TEST(Gaps, KnownRows) {
    // best 144, average 146.84 is reported as 1.93
    const GapStats a = gap_stats({144, 149.68});
    EXPECT_NEAR(a.gap1, 1.93, 0.005);
    EXPECT_NEAR(a.gap1_alt, 1.97, 0.005);
    // 45.74 / 45.82 / 45.93 is reported as 0.18 and 0.24; both divisors agree to rounding
    const GapStats b = gap_stats({45.74, 45.79, 45.93});
    EXPECT_NEAR(b.gap1, 0.18, 0.01);
    EXPECT_NEAR(b.gap2, 0.24, 0.01);
    EXPECT_NEAR(b.gap1_alt, 0.18, 0.01);
}

TEST(Gaps, Rcp) {
    const auto r = compute_rcp({{"a", 100}, {"b", 110}, {"c", 120}});
    EXPECT_DOUBLE_EQ(r.at("a"), 0);
    EXPECT_DOUBLE_EQ(r.at("b"), 10);
    EXPECT_DOUBLE_EQ(r.at("c"), 20);
    EXPECT_DOUBLE_EQ(compute_rcp({{"x", 105}, {"y", 100}}).at("x"), 5);
}

TEST(Reference, BundledTable) {
    const ReferenceTable t = read_reference_csv(kSource / "data/reference/best_known.csv");
    EXPECT_EQ(t.size(), 168u);
    EXPECT_DOUBLE_EQ(*t.at("C101_30").best, 1383);
    EXPECT_EQ(*t.at("C101_30").unvisited, 1);
    EXPECT_FALSE(t.at("RC204_30").best.has_value());
}

TEST(Reference, Status) {
    ReferenceTable ref;
    ref["C101_30"] = {1383.0, 1};
    ref["C102_30"] = {344.0, 0};
    ref["C103_30"] = {300.0, 0};
    ref["RC204_30"] = {std::nullopt, 0};
    const ExperimentResult r = summarize({record("C101_30", 0, 1383), record("C102_30", 0, 340),
                                          record("C103_30", 0, 303), record("RC204_30", 0, 549),
                                          record("X1", 0, 10)},
                                         &ref);
    ASSERT_EQ(r.instances.size(), 5u);
    EXPECT_EQ(r.instances[0].status, ReferenceStatus::optimal);
    EXPECT_DOUBLE_EQ(*r.instances[0].avg_gap, 0);
    EXPECT_EQ(r.instances[1].status, ReferenceStatus::improved);
    EXPECT_NEAR(*r.instances[1].avg_gap, 100.0 * 4 / 344, 1e-12);
    EXPECT_EQ(r.instances[2].status, ReferenceStatus::worse);
    EXPECT_NEAR(*r.instances[2].avg_gap, -1.0, 1e-12);
    EXPECT_EQ(r.instances[3].status, ReferenceStatus::new_best);
    EXPECT_FALSE(r.instances[3].avg_gap.has_value());
    EXPECT_EQ(r.instances[4].status, ReferenceStatus::no_reference);
    EXPECT_STREQ(to_string(ReferenceStatus::new_best), "new_best");

    const ClassSummary* c1 = nullptr;
    const ClassSummary* rc2 = nullptr;
    for (const ClassSummary& c : r.classes) {
        if (c.cls == "C1_30") c1 = &c;
        if (c.cls == "RC2_30") rc2 = &c;
    }
    ASSERT_TRUE(c1 && rc2);
    EXPECT_EQ(c1->instances, 3);
    EXPECT_EQ(c1->n_opt, 1);
    EXPECT_EQ(c1->n_imp, 1);
    EXPECT_EQ(c1->n_worse, 1);
    EXPECT_NEAR(*c1->avg_gap, (0 + 100.0 * 4 / 344 - 1.0) / 3, 1e-12);
    EXPECT_EQ(rc2->n_new, 1);
    EXPECT_FALSE(rc2->avg_gap.has_value());
}

TEST(Summary, SingleRunPassesThrough) {
    RunRecord r = record("covid", 0, 812.5);
    r.unvisited = 2;
    const ExperimentResult s = summarize({r}, nullptr);
    ASSERT_EQ(s.instances.size(), 1u);
    const InstanceSummary& i = s.instances[0];
    EXPECT_EQ(i.runs, 1);
    EXPECT_DOUBLE_EQ(i.best, 812.5);
    EXPECT_DOUBLE_EQ(i.best_avg, 812.5);
    EXPECT_DOUBLE_EQ(i.worst, 812.5);
    EXPECT_DOUBLE_EQ(i.stddev, 0);
    EXPECT_DOUBLE_EQ(i.gaps.gap1, 0);
    EXPECT_EQ(i.best_unvisited, 2);
    EXPECT_DOUBLE_EQ(i.avg_cpu, 0.5);
}

TEST(Summary, SampleStatistics) {
    const ExperimentResult s =
        summarize({record("a", 2, 130), record("a", 0, 100), record("a", 1, 120), record("a", 0, 90, alns::VariantId::A3)},
                  nullptr);
    ASSERT_EQ(s.instances.size(), 2u);
    const InstanceSummary& a0 = s.instances[0];
    EXPECT_EQ(a0.variant, alns::VariantId::A0);
    EXPECT_DOUBLE_EQ(a0.best, 100);
    EXPECT_NEAR(a0.best_avg, 350.0 / 3, 1e-12);
    EXPECT_DOUBLE_EQ(a0.worst, 130);
    EXPECT_NEAR(a0.stddev, std::sqrt((std::pow(100 - 350.0 / 3, 2) + std::pow(120 - 350.0 / 3, 2) +
                                      std::pow(130 - 350.0 / 3, 2)) / 2),
                1e-9);
    EXPECT_NEAR(a0.cv, a0.stddev / a0.best_avg, 1e-12);
    EXPECT_EQ(s.records[0].replication, 0);
    EXPECT_EQ(s.records[2].replication, 2);
}

TEST(Naming, InstanceClass) {
    EXPECT_EQ(instance_class("C101_30"), "C1_30");
    EXPECT_EQ(instance_class("RC204_50"), "RC2_50");
    EXPECT_EQ(instance_class("R112_100"), "R1_100");
    EXPECT_EQ(instance_class("50SB3"), "50SB");
    EXPECT_EQ(instance_class("covid12_s3"), "covid12_s3");
}

TEST(Seeds, ReplicationSeedsAreDistinctAndStable) {
    std::set<std::uint64_t> seen;
    for (std::size_t i = 0; i < 20; ++i) {
        for (int r = 0; r < 10; ++r) {
            seen.insert(replication_seed(7, i, r));
        }
    }
    EXPECT_EQ(seen.size(), 200u);
    EXPECT_EQ(replication_seed(7, 3, 4), replication_seed(7, 3, 4));
    EXPECT_NE(replication_seed(7, 3, 4), replication_seed(8, 3, 4));
}

TEST(ExperimentSpec, ParsesAndExpandsWildcards) {
    const fs::path fixtures = kSource / "data/fixtures";
    const ExperimentSpec s = parse_experiment_spec_text(
        R"({"instances": ["*.inst"], "variants": ["A1", "A2"], "replications": 3, "seed_base": 9,
            "theta": 100, "reference": "../reference/best_known.csv"})",
        fixtures);
    ASSERT_EQ(s.instances.size(), 2u);
    EXPECT_EQ(s.instances[0].filename(), "C101_30.inst");
    EXPECT_EQ(s.instances[1].filename(), "covid12.inst");
    EXPECT_EQ(s.variants, (std::vector<alns::VariantId>{alns::VariantId::A1, alns::VariantId::A2}));
    EXPECT_EQ(s.replications, 3);
    EXPECT_EQ(s.seed_base, 9u);
    EXPECT_EQ(*s.theta, 100);
    EXPECT_FALSE(s.theta_bar.has_value());
    EXPECT_TRUE(fs::exists(*s.reference));
}

TEST(ExperimentSpec, RejectsBadInput) {
    const fs::path d = kSource / "data/fixtures";
    EXPECT_THROW(parse_experiment_spec_text(R"({"instances": ["covid12.inst"], "colour": 1})", d), std::exception);
    EXPECT_THROW(parse_experiment_spec_text(R"({"instances": ["nothing*.inst"]})", d), std::exception);
    EXPECT_THROW(parse_experiment_spec_text(R"({"instances": ["covid12.inst"], "replications": 0})", d),
                 std::exception);
    EXPECT_THROW(parse_experiment_spec_text(R"({"instances": ["covid12.inst"], "variants": ["B0"]})", d),
                 std::exception);
    EXPECT_THROW(parse_experiment_spec_text("{", d), std::exception);
}

TEST(Experiment, RunsAndWritesStableCsv) {
    ExperimentSpec spec = parse_experiment_spec(kSource / "data/fixtures/bench_small.json");
    spec.threads = 1;
    const ExperimentResult a = run_experiment(spec);
    ASSERT_EQ(a.records.size(), 8u);
    for (const RunRecord& r : a.records) {
        EXPECT_TRUE(r.valid) << r.instance;
        EXPECT_NEAR(r.best_cost, r.travel_cost + r.penalty_cost, 1e-9);
        EXPECT_GE(r.iterations, 600);
    }
    spec.threads = 2;
    const ExperimentResult b = run_experiment(spec);
    std::ostringstream ca, cb;
    write_csv(ca, a);
    write_csv(cb, b);
    EXPECT_EQ(without_wall(ca.str()), without_wall(cb.str()));

    const auto rows = lines(ca.str());
    const auto header = split(rows.at(0));
    EXPECT_EQ(header.front(), "kind");
    EXPECT_EQ(header.back(), "wall_seconds");
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) {
        col[header[i]] = i;
    }
    // instance rows can be rebuilt from the run rows
    std::map<std::string, std::vector<double>> costs;
    std::map<std::string, double> best;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto cells = split(rows[i]);
        ASSERT_EQ(cells.size(), header.size()) << rows[i];
        const std::string key = cells[col["instance"]] + "/" + cells[col["variant"]];
        if (cells[0] == "run") {
            costs[key].push_back(std::stod(cells[col["cost"]]));
        } else if (cells[0] == "instance") {
            best[key] = std::stod(cells[col["best"]]);
        }
    }
    ASSERT_EQ(costs.size(), 4u);
    for (const auto& [key, c] : costs) {
        EXPECT_NEAR(*std::min_element(c.begin(), c.end()), best.at(key), 1e-6) << key;
    }
}
