#include "hhsrp/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hhsrp/alns/engine.hpp"
#include "hhsrp/core/validate.hpp"
#include "hhsrp/io/native.hpp"

namespace hhsrp::bench {

namespace fs = std::filesystem;

namespace {

double mean(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) {
        return 0.0;
    }
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

bool wildcard_match(const std::string& pattern, const std::string& text) {
    std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') {
        ++p;
    }
    return p == pattern.size();
}

std::vector<fs::path> expand(const fs::path& entry) {
    const std::string name = entry.filename().string();
    if (name.find_first_of("*?") == std::string::npos) {
        return {entry};
    }
    const fs::path dir = entry.has_parent_path() ? entry.parent_path() : fs::path(".");
    std::vector<fs::path> out;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(dir, ec)) {
        if (e.is_regular_file() && wildcard_match(name, e.path().filename().string())) {
            out.push_back(e.path());
        }
    }
    if (ec) {
        throw std::runtime_error("cannot list " + dir.string() + ": " + ec.message());
    }
    std::sort(out.begin(), out.end());
    if (out.empty()) {
        throw std::runtime_error("pattern " + entry.string() + " matches no file");
    }
    return out;
}

std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string opt_fixed(const std::optional<double>& v) {
    return v ? fixed(*v) : "";
}

} // namespace

ReferenceTable read_reference_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open reference file " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("instance,", 0) != 0) {
        throw std::runtime_error(path.string() + ": expected header starting with 'instance,'");
    }
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        for (std::string h; std::getline(ss, h, ',');) {
            header.push_back(h);
        }
    }
    const auto col = [&header](const std::string& name) -> int {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<int>(it - header.begin());
    };
    const int best_col = col("best_known");
    const int unvisited_col = col("a0_unvisited");
    if (best_col < 0) {
        throw std::runtime_error(path.string() + ": missing column best_known");
    }
    ReferenceTable table;
    int number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) {
            cells.push_back(c);
        }
        if (cells.size() < header.size()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(number) + ": too few columns");
        }
        ReferenceValue v;
        try {
            if (cells[static_cast<std::size_t>(best_col)] != "NA") {
                v.best = std::stod(cells[static_cast<std::size_t>(best_col)]);
            }
            if (unvisited_col >= 0 && cells[static_cast<std::size_t>(unvisited_col)] != "NA") {
                v.unvisited = std::stoi(cells[static_cast<std::size_t>(unvisited_col)]);
            }
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(number) + ": bad number");
        }
        table[cells[0]] = v;
    }
    return table;
}

ExperimentSpec parse_experiment_spec_text(const std::string& json_text, const fs::path& base_dir) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("experiment spec: ") + e.what());
    }
    if (!doc.is_object()) {
        throw std::runtime_error("experiment spec must be a JSON object");
    }
    static const std::vector<std::string> known{"instances", "variants", "replications", "seed_base", "theta",
                                                "theta_bar", "reference", "threads", "trace_dir"};
    for (const auto& [key, value] : doc.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw std::runtime_error("experiment spec: unknown key '" + key + "'");
        }
    }
    auto resolve = [&base_dir](const std::string& p) {
        const fs::path path(p);
        return path.is_absolute() ? path : base_dir / path;
    };

    ExperimentSpec spec;
    try {
        if (!doc.contains("instances") || !doc["instances"].is_array() || doc["instances"].empty()) {
            throw std::runtime_error("'instances' must be a non-empty array");
        }
        for (const auto& e : doc["instances"]) {
            for (const fs::path& p : expand(resolve(e.get<std::string>()))) {
                spec.instances.push_back(p);
            }
        }
        if (doc.contains("variants")) {
            spec.variants.clear();
            for (const auto& v : doc["variants"]) {
                spec.variants.push_back(alns::variant_from_string(v.get<std::string>()));
            }
            if (spec.variants.empty()) {
                throw std::runtime_error("'variants' must not be empty");
            }
        }
        spec.replications = doc.value("replications", 5);
        if (spec.replications < 1) {
            throw std::runtime_error("'replications' must be >= 1");
        }
        spec.seed_base = doc.value("seed_base", std::uint64_t{1});
        if (doc.contains("theta")) {
            spec.theta = doc["theta"].get<long>();
        }
        if (doc.contains("theta_bar")) {
            spec.theta_bar = doc["theta_bar"].get<long>();
        }
        if (doc.contains("reference")) {
            spec.reference = resolve(doc["reference"].get<std::string>());
        }
        spec.threads = doc.value("threads", 0);
        if (doc.contains("trace_dir")) {
            spec.trace_dir = resolve(doc["trace_dir"].get<std::string>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("experiment spec: ") + e.what());
    }
    return spec;
}

ExperimentSpec parse_experiment_spec(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open experiment spec " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_spec_text(ss.str(), path.has_parent_path() ? path.parent_path() : fs::path("."));
}

std::uint64_t replication_seed(std::uint64_t seed_base, std::size_t instance_index, int replication) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(seed_base);
    h = mix(h ^ static_cast<std::uint64_t>(instance_index));
    h = mix(h ^ static_cast<std::uint64_t>(replication));
    return h;
}

GapStats gap_stats(const std::vector<double>& costs) {
    GapStats g;
    if (costs.empty()) {
        return g;
    }
    const double best = *std::min_element(costs.begin(), costs.end());
    const double worst = *std::max_element(costs.begin(), costs.end());
    const double avg = mean(costs);
    auto pct = [](double num, double den) { return den != 0.0 ? 100.0 * num / den : 0.0; };
    g.gap1 = pct(avg - best, avg);
    g.gap2 = pct(worst - avg, worst);
    g.gap1_alt = pct(avg - best, best);
    g.gap2_alt = pct(worst - avg, avg);
    return g;
}

std::map<std::string, double> compute_rcp(const std::map<std::string, double>& cost_per_setting) {
    std::map<std::string, double> out;
    if (cost_per_setting.empty()) {
        return out;
    }
    double f_min = cost_per_setting.begin()->second;
    for (const auto& [setting, f] : cost_per_setting) {
        f_min = std::min(f_min, f);
    }
    for (const auto& [setting, f] : cost_per_setting) {
        out[setting] = f_min != 0.0 ? 100.0 * (f - f_min) / f_min : 0.0;
    }
    return out;
}

std::string instance_class(const std::string& name) {
    static const std::regex solomon(R"(^([A-Z]+)(\d)\d\d_(\d+)$)");
    static const std::regex numbered(R"(^(\d+[A-Za-z]+)\d+$)");
    std::smatch m;
    if (std::regex_match(name, m, solomon)) {
        return m[1].str() + m[2].str() + "_" + m[3].str();
    }
    if (std::regex_match(name, m, numbered)) {
        return m[1].str();
    }
    return name;
}

const char* to_string(ReferenceStatus status) {
    switch (status) {
    case ReferenceStatus::no_reference:
        return "no_reference";
    case ReferenceStatus::optimal:
        return "opt";
    case ReferenceStatus::improved:
        return "imp";
    case ReferenceStatus::worse:
        return "worse";
    case ReferenceStatus::new_best:
        return "new_best";
    }
    return "?";
}

ExperimentResult summarize(std::vector<RunRecord> records, const ReferenceTable* reference) {
    ExperimentResult result;
    std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.instance, a.variant, a.replication) < std::tie(b.instance, b.variant, b.replication);
    });
    result.records = std::move(records);

    for (std::size_t i = 0; i < result.records.size();) {
        std::size_t j = i;
        while (j < result.records.size() && result.records[j].instance == result.records[i].instance &&
               result.records[j].variant == result.records[i].variant) {
            ++j;
        }
        InstanceSummary s;
        s.instance = result.records[i].instance;
        s.cls = instance_class(s.instance);
        s.variant = result.records[i].variant;
        std::vector<double> costs, cpu;
        const RunRecord* best = nullptr;
        for (std::size_t r = i; r < j; ++r) {
            const RunRecord& rec = result.records[r];
            costs.push_back(rec.best_cost);
            cpu.push_back(rec.wall_seconds);
            s.all_valid = s.all_valid && rec.valid;
            if (best == nullptr || rec.best_cost < best->best_cost) {
                best = &rec;
            }
        }
        s.runs = static_cast<int>(j - i);
        s.best = best->best_cost;
        s.best_unvisited = best->unvisited;
        s.best_avg = mean(costs);
        s.worst = *std::max_element(costs.begin(), costs.end());
        s.stddev = sample_std(costs);
        s.cv = s.best_avg != 0.0 ? s.stddev / s.best_avg : 0.0;
        s.gaps = gap_stats(costs);
        s.avg_cpu = mean(cpu);
        if (reference != nullptr) {
            if (auto it = reference->find(s.instance); it != reference->end()) {
                if (!it->second.best) {
                    s.status = ReferenceStatus::new_best;
                } else {
                    const double ref = *it->second.best;
                    s.reference = ref;
                    s.avg_gap = ref != 0.0 ? 100.0 * (ref - s.best) / ref : 0.0;
                    const double tol = 1e-6 * std::max(1.0, std::abs(ref));
                    s.status = std::abs(s.best - ref) <= tol ? ReferenceStatus::optimal
                               : s.best < ref               ? ReferenceStatus::improved
                                                            : ReferenceStatus::worse;
                }
            }
        }
        result.instances.push_back(std::move(s));
        i = j;
    }

    std::map<std::pair<std::string, alns::VariantId>, std::vector<const InstanceSummary*>> groups;
    for (const InstanceSummary& s : result.instances) {
        groups[{s.cls, s.variant}].push_back(&s);
    }
    for (const auto& [key, members] : groups) {
        ClassSummary c;
        c.cls = key.first;
        c.variant = key.second;
        c.instances = static_cast<int>(members.size());
        std::vector<double> bests, gaps, cpu;
        for (const InstanceSummary* s : members) {
            bests.push_back(s->best);
            cpu.push_back(s->avg_cpu);
            if (s->avg_gap) {
                gaps.push_back(*s->avg_gap);
            }
            c.n_opt += s->status == ReferenceStatus::optimal;
            c.n_imp += s->status == ReferenceStatus::improved;
            c.n_worse += s->status == ReferenceStatus::worse;
            c.n_new += s->status == ReferenceStatus::new_best;
        }
        c.mean_best = mean(bests);
        c.std_best = sample_std(bests);
        c.cv = c.mean_best != 0.0 ? c.std_best / c.mean_best : 0.0;
        if (!gaps.empty()) {
            c.avg_gap = mean(gaps);
            c.std_gap = sample_std(gaps);
        }
        c.avg_cpu = mean(cpu);
        result.classes.push_back(std::move(c));
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, std::ostream* progress) {
    std::vector<ProblemInstance> instances;
    instances.reserve(spec.instances.size());
    for (const fs::path& p : spec.instances) {
        instances.push_back(io::parse_native(p));
    }
    std::optional<ReferenceTable> reference;
    if (spec.reference) {
        reference = read_reference_csv(*spec.reference);
    }
    if (spec.trace_dir) {
        fs::create_directories(*spec.trace_dir);
    }

    struct Task {
        std::size_t instance;
        alns::VariantId variant;
        int replication;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (alns::VariantId v : spec.variants) {
            for (int r = 0; r < spec.replications; ++r) {
                tasks.push_back({i, v, r});
            }
        }
    }
    std::vector<RunRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    std::exception_ptr failure;

    auto worker = [&]() {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) {
                return;
            }
            try {
                const Task& task = tasks[t];
                const ProblemInstance& in = instances[task.instance];
                alns::SearchConfig config = alns::SearchConfig::for_variant(task.variant);
                config.seed = replication_seed(spec.seed_base, task.instance, task.replication);
                if (spec.theta) {
                    config.theta = *spec.theta;
                }
                if (spec.theta_bar) {
                    config.theta_bar = *spec.theta_bar;
                }
                config.trace = spec.trace_dir.has_value();

                const auto start = std::chrono::steady_clock::now();
                const alns::RunResult run = alns::run(in, config);
                const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

                RunRecord rec;
                rec.instance = in.name();
                rec.variant = task.variant;
                rec.replication = task.replication;
                rec.seed = config.seed;
                rec.valid = validate_solution(run.best, in).ok();
                const CostBreakdown cost = solution_cost(run.best, in);
                rec.valid = rec.valid && std::abs(cost.total - run.best_cost.total) <= 1e-6 * std::max(1.0, cost.total);
                rec.best_cost = cost.total;
                rec.travel_cost = cost.travel_cost;
                rec.penalty_cost = cost.penalty_cost;
                rec.unvisited = static_cast<int>(run.best.request_bank.size());
                rec.iterations = run.iterations;
                rec.wall_seconds = wall;
                if (spec.trace_dir) {
                    const fs::path tp = *spec.trace_dir / (in.name() + "_" + alns::to_string(task.variant) + "_r" +
                                                           std::to_string(task.replication) + ".tsv");
                    std::ofstream out(tp);
                    alns::write_trace(out, run.trace);
                    rec.trace_path = tp.string();
                }
                records[t] = std::move(rec);
                if (progress != nullptr) {
                    std::lock_guard<std::mutex> lock(log_mutex);
                    *progress << records[t].instance << " " << alns::to_string(task.variant) << " rep "
                              << task.replication << ": " << fixed(records[t].best_cost) << " ("
                              << records[t].unvisited << " unvisited, " << fixed(wall) << " s)\n";
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(log_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = tasks.size();
                return;
            }
        }
    };

    int threads = spec.threads > 0 ? spec.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return summarize(std::move(records), reference ? &*reference : nullptr);
}

void write_csv(std::ostream& out, const ExperimentResult& result) {
    static const std::vector<std::string> columns{
        "kind",   "instance", "class",    "variant",  "replication", "seed",    "runs",   "cost",
        "travel", "penalty",  "unvisited", "valid",   "iterations",  "best",    "best_avg", "worst",
        "std",    "cv",       "gap1",     "gap2",     "gap1_alt",    "gap2_alt", "reference", "status",
        "avg_gap", "std_gap", "n_opt",    "n_imp",    "n_worse",     "n_new",   "wall_seconds"};
    // cells are filled by column name so every row has the header's width
    struct Row {
        std::vector<std::string> cells = std::vector<std::string>(columns.size());
        std::string& operator[](const std::string& name) {
            const auto it = std::find(columns.begin(), columns.end(), name);
            return cells[static_cast<std::size_t>(it - columns.begin())];
        }
    };
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << cells[i];
        }
        out << "\n";
    };
    emit(columns);
    for (const RunRecord& r : result.records) {
        Row row;
        row["kind"] = "run";
        row["instance"] = r.instance;
        row["class"] = instance_class(r.instance);
        row["variant"] = alns::to_string(r.variant);
        row["replication"] = std::to_string(r.replication);
        row["seed"] = std::to_string(r.seed);
        row["runs"] = "1";
        row["cost"] = fixed(r.best_cost);
        row["travel"] = fixed(r.travel_cost);
        row["penalty"] = fixed(r.penalty_cost);
        row["unvisited"] = std::to_string(r.unvisited);
        row["valid"] = r.valid ? "1" : "0";
        row["iterations"] = std::to_string(r.iterations);
        row["wall_seconds"] = fixed(r.wall_seconds);
        emit(row.cells);
    }
    for (const InstanceSummary& s : result.instances) {
        Row row;
        row["kind"] = "instance";
        row["instance"] = s.instance;
        row["class"] = s.cls;
        row["variant"] = alns::to_string(s.variant);
        row["runs"] = std::to_string(s.runs);
        row["unvisited"] = std::to_string(s.best_unvisited);
        row["valid"] = s.all_valid ? "1" : "0";
        row["best"] = fixed(s.best);
        row["best_avg"] = fixed(s.best_avg);
        row["worst"] = fixed(s.worst);
        row["std"] = fixed(s.stddev);
        row["cv"] = fixed(s.cv);
        row["gap1"] = fixed(s.gaps.gap1);
        row["gap2"] = fixed(s.gaps.gap2);
        row["gap1_alt"] = fixed(s.gaps.gap1_alt);
        row["gap2_alt"] = fixed(s.gaps.gap2_alt);
        row["reference"] = opt_fixed(s.reference);
        row["status"] = to_string(s.status);
        row["avg_gap"] = opt_fixed(s.avg_gap);
        row["wall_seconds"] = fixed(s.avg_cpu);
        emit(row.cells);
    }
    for (const ClassSummary& c : result.classes) {
        Row row;
        row["kind"] = "class";
        row["class"] = c.cls;
        row["variant"] = alns::to_string(c.variant);
        row["runs"] = std::to_string(c.instances);
        row["best"] = fixed(c.mean_best);
        row["std"] = fixed(c.std_best);
        row["cv"] = fixed(c.cv);
        row["avg_gap"] = opt_fixed(c.avg_gap);
        row["std_gap"] = opt_fixed(c.std_gap);
        row["n_opt"] = std::to_string(c.n_opt);
        row["n_imp"] = std::to_string(c.n_imp);
        row["n_worse"] = std::to_string(c.n_worse);
        row["n_new"] = std::to_string(c.n_new);
        row["wall_seconds"] = fixed(c.avg_cpu);
        emit(row.cells);
    }
}

} // namespace hhsrp::bench
