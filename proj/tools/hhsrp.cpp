#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hhsrp/alns/engine.hpp"
#include "hhsrp/bench/experiment.hpp"
#include "hhsrp/core/validate.hpp"
#include "hhsrp/io/errors.hpp"
#include "hhsrp/io/generator.hpp"
#include "hhsrp/io/geojson.hpp"
#include "hhsrp/io/native.hpp"
#include "hhsrp/io/solomon.hpp"
#include "hhsrp/io/solution_io.hpp"
#include "hhsrp/oracle/oracle.hpp"

using namespace hhsrp;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIoError = 2;

// validation failures are reported through this, everything else is an I/O or input problem
struct Invalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void print_cost(std::ostream& out, const CostBreakdown& c) {
    out << "travel " << c.travel_cost << "  penalty " << c.penalty_cost << "  total " << c.total << "\n";
}

void print_violations(const ValidationReport& report) {
    for (const Violation& v : report.violations) {
        std::cerr << "  " << to_string(v.code);
        if (v.caregiver != 0) {
            std::cerr << " caregiver " << v.caregiver;
        }
        if (v.patient != 0) {
            std::cerr << " patient " << v.patient;
        }
        if (!v.detail.empty()) {
            std::cerr << ": " << v.detail;
        }
        std::cerr << "\n";
    }
}

struct SolveOpts {
    std::string instance;
    std::string variant = "A0";
    std::uint64_t seed = 1;
    std::optional<long> theta;
    std::optional<long> theta_bar;
    std::string trace;
    std::string out;
    std::string geojson;
};

int solve(const SolveOpts& o) {
    const ProblemInstance in = io::parse_native(o.instance);
    alns::SearchConfig config = alns::SearchConfig::for_variant(alns::variant_from_string(o.variant));
    config.seed = o.seed;
    if (o.theta) {
        config.theta = *o.theta;
    }
    if (o.theta_bar) {
        config.theta_bar = *o.theta_bar;
    }
    config.trace = !o.trace.empty();
    config.validate();

    const alns::RunResult result = alns::run(in, config);
    const ValidationReport report = validate_solution(result.best, in);
    if (!report.ok()) {
        print_violations(report);
        throw Invalid("search returned an invalid solution");
    }
    std::cout << in.name() << " " << o.variant << " seed " << o.seed << ": " << result.iterations << " iterations, "
              << result.best.request_bank.size() << " unvisited\n";
    print_cost(std::cout, result.best_cost);

    if (!o.trace.empty()) {
        std::ofstream t(o.trace);
        if (!t) {
            throw io::IoError("cannot write " + o.trace);
        }
        alns::write_trace(t, result.trace);
    }
    if (!o.out.empty()) {
        io::write_solution(result.best, in, o.out);
    }
    if (!o.geojson.empty()) {
        io::export_geojson(result.best, in, o.geojson);
    }
    return kOk;
}

int run_bench(const std::string& spec_path, const std::string& csv, bool quiet) {
    const bench::ExperimentSpec spec = bench::parse_experiment_spec(spec_path);
    const bench::ExperimentResult result = bench::run_experiment(spec, quiet ? nullptr : &std::cerr);
    bool all_valid = true;
    for (const auto& r : result.records) {
        all_valid = all_valid && r.valid;
    }
    if (csv.empty() || csv == "-") {
        bench::write_csv(std::cout, result);
    } else {
        std::ofstream out(csv);
        if (!out) {
            throw io::IoError("cannot write " + csv);
        }
        bench::write_csv(out, result);
    }
    if (!all_valid) {
        throw Invalid("some runs produced invalid solutions");
    }
    return kOk;
}

struct GenOpts {
    io::CovidParams params;
    std::optional<int> caregivers;
    std::vector<double> box;
    std::string points;
    std::string out;
};

std::vector<Point> read_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw io::IoError("cannot open " + path);
    }
    std::vector<Point> pts;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        Point p;
        if (!(ls >> p.x)) {
            continue;
        }
        std::string extra;
        if (!(ls >> p.y) || (ls >> extra)) {
            throw io::ParseError(path, number, 1, "expected 'x y'");
        }
        pts.push_back(p);
    }
    return pts;
}

int gen(GenOpts o) {
    o.params.caregivers = o.caregivers;
    if (!o.box.empty()) {
        o.params.box_min_x = o.box[0];
        o.params.box_min_y = o.box[1];
        o.params.box_max_x = o.box[2];
        o.params.box_max_y = o.box[3];
    }
    if (!o.points.empty()) {
        o.params.points = read_points(o.points);
    }
    const io::GeneratedInstance g = io::generate_covid_like(o.params);
    if (o.out.empty() || o.out == "-") {
        std::cout << io::format_native(g.instance);
    } else {
        io::write_native(g.instance, o.out);
        std::cerr << "wrote " << o.out << " (" << g.instance.patient_count() << " patients, "
                  << g.instance.caregiver_count() << " caregivers)\n";
    }
    return kOk;
}

int validate(const std::string& instance_path, const std::string& solution_path) {
    const ProblemInstance in = io::parse_native(instance_path);
    const io::SolutionDocument doc = io::parse_solution_file(solution_path);
    if (!doc.instance_name.empty() && doc.instance_name != in.name()) {
        std::cerr << "warning: solution names instance '" << doc.instance_name << "', file holds '" << in.name()
                  << "'\n";
    }
    const ValidationReport report = validate_solution(doc.solution, in);
    if (!report.ok()) {
        print_violations(report);
        throw Invalid(std::to_string(report.violations.size()) + " violation(s)");
    }
    const CostBreakdown cost = solution_cost(doc.solution, in);
    if (doc.recorded_cost) {
        const double tol = 1e-6 * std::max(1.0, std::abs(cost.total));
        if (std::abs(doc.recorded_cost->total - cost.total) > tol) {
            std::ostringstream msg;
            msg << "recorded total " << doc.recorded_cost->total << " differs from recomputed " << cost.total;
            throw Invalid(msg.str());
        }
    }
    std::cout << "valid\n";
    print_cost(std::cout, cost);
    return kOk;
}

struct OracleOpts {
    std::optional<std::uint64_t> tiny;
    std::string instance;
    std::uint64_t seed = 1;
    int seeds = 3;
    long theta = 2000;
    long theta_bar = 200;
};

int oracle_cmd(const OracleOpts& o) {
    const ProblemInstance in = o.tiny ? oracle::tiny_instance(*o.tiny) : io::parse_native(o.instance);
    const oracle::OracleResult exact = oracle::brute_force_optimum(in);
    std::cout << in.name() << ": " << exact.feasible_count << " feasible solutions, optimum " << exact.optimum_cost
              << "\n";
    double engine_best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < o.seeds; ++k) {
        alns::SearchConfig config;
        config.seed = o.seed + static_cast<std::uint64_t>(k);
        config.theta = o.theta;
        config.theta_bar = o.theta_bar;
        const alns::RunResult r = alns::run(in, config);
        const ValidationReport report = validate_solution(r.best, in);
        if (!report.ok()) {
            print_violations(report);
            throw Invalid("search returned an invalid solution");
        }
        engine_best = std::min(engine_best, r.best_cost.total);
    }
    const oracle::CertifyReport cert = oracle::certify(engine_best, exact);
    std::cout << cert.text << "\n";
    if (cert.engine_below_oracle) {
        throw Invalid("engine reports a cost below the exact optimum");
    }
    return kOk;
}

int import_cmd(const std::string& solomon, const std::string& sidecar, const std::string& out) {
    const ProblemInstance in = io::import_solomon(solomon, io::parse_sidecar(sidecar));
    if (out.empty() || out == "-") {
        std::cout << io::format_native(in);
    } else {
        io::write_native(in, out);
        std::cerr << "wrote " << out << " (" << in.patient_count() << " patients)\n";
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Home healthcare routing with lunch breaks: ALNS solver and tools"};
    app.require_subcommand(1);

    SolveOpts so;
    auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
    solve_cmd->add_option("instance", so.instance, "Native instance file")->required();
    solve_cmd->add_option("--variant", so.variant, "A0, A1, A2 or A3")
        ->check(CLI::IsMember({"A0", "A1", "A2", "A3"}));
    solve_cmd->add_option("--seed", so.seed, "Random seed");
    solve_cmd->add_option("--theta", so.theta, "Base iteration budget");
    solve_cmd->add_option("--theta-bar", so.theta_bar, "Budget extension");
    solve_cmd->add_option("--trace", so.trace, "Write a per-iteration TSV trace");
    solve_cmd->add_option("--out", so.out, "Write the best solution");
    solve_cmd->add_option("--geojson", so.geojson, "Write routes as GeoJSON");

    std::string spec_path, csv;
    bool quiet = false;
    auto* bench_cmd = app.add_subcommand("bench", "Run an experiment spec (JSON)");
    bench_cmd->add_option("spec", spec_path, "Experiment spec")->required();
    bench_cmd->add_option("--csv", csv, "CSV output file (default stdout)");
    bench_cmd->add_flag("--quiet", quiet, "No per-run progress on stderr");

    GenOpts go;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a COVID-style instance");
    gen_cmd->add_option("--patients", go.params.patients, "Number of patients")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--caregivers", go.caregivers, "Number of caregivers (default ceil(n/20))")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", go.params.seed, "Random seed");
    gen_cmd->add_option("--box", go.box, "Sampling box in km: xmin ymin xmax ymax")->expected(4);
    gen_cmd->add_option("--points", go.points, "File of 'x y' lines (km); first is the depot");
    gen_cmd->add_option("--speed", go.params.speed_kmh, "Travel speed in km/h")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--penalty", go.params.penalty, "Unvisited penalty");
    gen_cmd->add_option("--name", go.params.name, "Instance name");
    gen_cmd->add_option("--out", go.out, "Output file (default stdout)");

    std::string v_instance, v_solution;
    auto* validate_cmd = app.add_subcommand("validate", "Check a solution against an instance");
    validate_cmd->add_option("--instance", v_instance, "Native instance file")->required();
    validate_cmd->add_option("--solution", v_solution, "Solution file")->required();

    OracleOpts oo;
    auto* oracle_sub = app.add_subcommand("oracle", "Certify the search against exhaustive enumeration");
    auto* tiny_opt = oracle_sub->add_option("--tiny", oo.tiny, "Seed of a generated tiny instance");
    oracle_sub->add_option("--instance", oo.instance, "Native instance file (at most 7 patients, 3 caregivers)")
        ->excludes(tiny_opt);
    oracle_sub->add_option("--seed", oo.seed, "First search seed");
    oracle_sub->add_option("--seeds", oo.seeds, "Number of search seeds")->check(CLI::PositiveNumber);
    oracle_sub->add_option("--theta", oo.theta, "Base iteration budget");
    oracle_sub->add_option("--theta-bar", oo.theta_bar, "Budget extension");

    std::string solomon, sidecar, import_out;
    auto* import_sub = app.add_subcommand("import", "Convert a Solomon-format file plus sidecar to native");
    import_sub->add_option("solomon", solomon, "Solomon-format instance")->required();
    import_sub->add_option("--sidecar", sidecar, "Sidecar with break, distance and caregiver data")->required();
    import_sub->add_option("--out", import_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kIoError;
    }

    try {
        if (*solve_cmd) {
            return solve(so);
        }
        if (*bench_cmd) {
            return run_bench(spec_path, csv, quiet);
        }
        if (*gen_cmd) {
            return gen(go);
        }
        if (*validate_cmd) {
            return validate(v_instance, v_solution);
        }
        if (*oracle_sub) {
            if (!oo.tiny && oo.instance.empty()) {
                std::cerr << "oracle: give --tiny SEED or --instance FILE\n";
                return kIoError;
            }
            return oracle_cmd(oo);
        }
        if (*import_sub) {
            return import_cmd(solomon, sidecar, import_out);
        }
    } catch (const Invalid& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
    return kOk;
}
