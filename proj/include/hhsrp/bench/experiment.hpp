#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhsrp/alns/config.hpp"

namespace hhsrp::bench {

struct ReferenceValue {
    std::optional<double> best; ///< absent for unsolved ("NA") instances
    std::optional<int> unvisited;
};
using ReferenceTable = std::map<std::string, ReferenceValue>;

/// CSV with header `instance,best_known[,...]`; NA marks an unknown best.
ReferenceTable read_reference_csv(const std::filesystem::path& path);

struct ExperimentSpec {
    std::vector<std::filesystem::path> instances;
    std::vector<alns::VariantId> variants{alns::VariantId::A0};
    int replications = 5;
    std::uint64_t seed_base = 1;
    std::optional<long> theta;
    std::optional<long> theta_bar;
    std::optional<std::filesystem::path> reference;
    int threads = 0; ///< 0: hardware concurrency
    std::optional<std::filesystem::path> trace_dir;
};

/// JSON document; relative paths resolve against the spec file's directory and
/// '*'/'?' in the file-name part of an instance entry expand to sorted matches.
ExperimentSpec parse_experiment_spec(const std::filesystem::path& path);
ExperimentSpec parse_experiment_spec_text(const std::string& json_text, const std::filesystem::path& base_dir);

/// splitmix64 finalizer over base, instance index and replication.
std::uint64_t replication_seed(std::uint64_t seed_base, std::size_t instance_index, int replication);

struct RunRecord {
    std::string instance;
    alns::VariantId variant = alns::VariantId::A0;
    int replication = 0;
    std::uint64_t seed = 0;
    double best_cost = 0.0;
    double travel_cost = 0.0;
    double penalty_cost = 0.0;
    int unvisited = 0;
    bool valid = false;
    long iterations = 0;
    double wall_seconds = 0.0;
    std::string trace_path;
};

/// Gap1 = 100 (avg - best) / avg, Gap2 = 100 (max - avg) / max; the *_alt
/// fields divide by best and avg instead.
struct GapStats {
    double gap1 = 0.0;
    double gap2 = 0.0;
    double gap1_alt = 0.0;
    double gap2_alt = 0.0;
};
GapStats gap_stats(const std::vector<double>& costs);

/// RCP_s = 100 (f_s - f_min) / f_min for each setting s of one instance.
std::map<std::string, double> compute_rcp(const std::map<std::string, double>& cost_per_setting);

/// "C101_30" -> "C1_30", "RC204_50" -> "RC2_50", "50SB3" -> "50SB"; other names map to themselves.
std::string instance_class(const std::string& name);

enum class ReferenceStatus { no_reference, optimal, improved, worse, new_best };
const char* to_string(ReferenceStatus status);

struct InstanceSummary {
    std::string instance;
    std::string cls;
    alns::VariantId variant = alns::VariantId::A0;
    int runs = 0;
    double best = 0.0;
    double best_avg = 0.0;
    double worst = 0.0;
    double stddev = 0.0; ///< sample standard deviation over replications
    double cv = 0.0;
    GapStats gaps;
    int best_unvisited = 0;
    double avg_cpu = 0.0;
    bool all_valid = true;
    std::optional<double> reference;
    ReferenceStatus status = ReferenceStatus::no_reference;
    std::optional<double> avg_gap; ///< 100 (ref - best) / ref; positive is an improvement
};

struct ClassSummary {
    std::string cls;
    alns::VariantId variant = alns::VariantId::A0;
    int instances = 0;
    double mean_best = 0.0;
    double std_best = 0.0;
    double cv = 0.0;
    int n_opt = 0;
    int n_imp = 0;
    int n_worse = 0;
    int n_new = 0;
    std::optional<double> avg_gap;
    std::optional<double> std_gap;
    double avg_cpu = 0.0;
};

struct ExperimentResult {
    std::vector<RunRecord> records;
    std::vector<InstanceSummary> instances;
    std::vector<ClassSummary> classes;
};

/// Aggregates records per (instance, variant) and per (class, variant).
ExperimentResult summarize(std::vector<RunRecord> records, const ReferenceTable* reference);

/// Runs every (instance, variant, replication) on a worker pool. Every best
/// solution is re-validated and its cost recomputed before it is recorded.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::ostream* progress = nullptr);

/// One table: rows of kind run, instance and class sharing a header. Wall
/// time sits alone in the last column.
void write_csv(std::ostream& out, const ExperimentResult& result);

} // namespace hhsrp::bench
