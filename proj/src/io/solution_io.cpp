#include "hhsrp/io/solution_io.hpp"

#include <cmath>
#include <sstream>

#include "text.hpp"

namespace hhsrp::io {

namespace {

bool close_enough(double a, double b) {
    return std::abs(a - b) <= 1e-6 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

} // namespace

std::string format_solution(const Solution& solution, const ProblemInstance& instance) {
    const auto num = text::format_number;
    std::ostringstream os;
    os << kSolutionHeader << "\n";
    os << "instance " << (instance.name().empty() ? "unnamed" : instance.name()) << "\n";
    for (const RoutePlan& route : solution.routes) {
        os << "route " << route.caregiver << " visits";
        for (PatientId p : route.visits) {
            os << " " << p;
        }
        if (route.lunch.position >= route.visits.size()) {
            os << " break depot\n";
        } else {
            os << " break "
               << (route.lunch.timing == BreakTiming::before_service ? "before " : "after ")
               << route.visits[route.lunch.position] << "\n";
        }
    }
    for (const RoutePlan& route : solution.routes) {
        const ScheduleTimeline tl = evaluate_route(route, instance);
        os << "timeline " << route.caregiver << " start";
        for (double s : tl.service_start) {
            os << " " << num(s);
        }
        os << " break " << num(tl.break_start) << " return " << num(tl.depot_return)
           << (tl.feasible ? "" : std::string(" infeasible ") + to_string(tl.violation)) << "\n";
    }
    os << "bank";
    for (PatientId p : solution.request_bank) {
        os << " " << p;
    }
    os << "\n";
    const CostBreakdown c = solution_cost(solution, instance);
    os << "cost " << num(c.travel_cost) << " " << num(c.penalty_cost) << " " << num(c.total) << "\n";
    os << "end\n";
    return os.str();
}

void write_solution(const Solution& solution, const ProblemInstance& instance, const std::filesystem::path& path) {
    text::write_file(path, format_solution(solution, instance));
}

SolutionDocument parse_solution_text(const std::string& content, const std::string& source) {
    text::Reader r(source, text::tokenize(content));
    if (r.done()) {
        r.fail(1, "empty solution file");
    }
    const text::Line& head = r.next();
    if (head.tokens.size() != 2 || head.tokens[0].text != "hhsrp-solution" || head.tokens[1].text != "1") {
        r.fail(head, 0, std::string("expected header '") + kSolutionHeader + "'");
    }
    SolutionDocument doc;
    bool ended = false;
    bool bank_seen = false;
    while (!r.done()) {
        const text::Line& line = r.next();
        const std::string& key = line.tokens[0].text;
        if (ended) {
            r.fail(line, 0, "content after 'end'");
        }
        if (key == "instance") {
            r.expect_count(line, 2);
            doc.instance_name = line.tokens[1].text;
        } else if (key == "route") {
            r.expect_at_least(line, 5);
            RoutePlan route;
            route.caregiver = static_cast<CaregiverId>(r.integer(line, 1));
            if (line.tokens[2].text != "visits") {
                r.fail(line, 2, "expected 'visits'");
            }
            std::size_t t = 3;
            while (t < line.tokens.size() && line.tokens[t].text != "break") {
                route.visits.push_back(static_cast<PatientId>(r.integer(line, t)));
                ++t;
            }
            if (t >= line.tokens.size()) {
                r.fail(line, t, "missing 'break'");
            }
            ++t;
            const std::string& where = r.word(line, t);
            if (where == "depot") {
                r.expect_count(line, t + 1);
                route.lunch = BreakPlacement::at_depot(route.visits.size());
            } else if (where == "before" || where == "after") {
                r.expect_count(line, t + 2);
                const auto host = static_cast<PatientId>(r.integer(line, t + 1));
                const auto it = std::find(route.visits.begin(), route.visits.end(), host);
                if (it == route.visits.end()) {
                    r.fail(line, t + 1, "break host " + std::to_string(host) + " is not on this route");
                }
                route.lunch = BreakPlacement{static_cast<std::size_t>(it - route.visits.begin()),
                                             where == "before" ? BreakTiming::before_service
                                                               : BreakTiming::after_service};
            } else {
                r.fail(line, t, "expected 'depot', 'before' or 'after'");
            }
            doc.solution.routes.push_back(std::move(route));
        } else if (key == "timeline") {
            // derived data, recomputed on load
        } else if (key == "bank") {
            if (bank_seen) {
                r.fail(line, 0, "duplicate 'bank'");
            }
            bank_seen = true;
            for (std::size_t t = 1; t < line.tokens.size(); ++t) {
                doc.solution.request_bank.push_back(static_cast<PatientId>(r.integer(line, t)));
            }
        } else if (key == "cost") {
            r.expect_count(line, 4);
            doc.recorded_cost = CostBreakdown{r.number(line, 1), r.number(line, 2), r.number(line, 3)};
        } else if (key == "end") {
            r.expect_count(line, 1);
            ended = true;
        } else {
            r.fail(line, 0, "unknown record '" + key + "'");
        }
    }
    if (!ended) {
        r.fail(r.last_line(), "missing 'end'");
    }
    if (!bank_seen) {
        r.fail(r.last_line(), "missing 'bank'");
    }
    return doc;
}

SolutionDocument parse_solution_file(const std::filesystem::path& path) {
    return parse_solution_text(text::read_file(path), path.string());
}

Solution read_solution_text(const std::string& content, const ProblemInstance& instance, const std::string& source) {
    SolutionDocument doc = parse_solution_text(content, source);
    for (const RoutePlan& route : doc.solution.routes) {
        if (!instance.has_caregiver(route.caregiver)) {
            throw ParseError(source, 0, 0, "unknown caregiver " + std::to_string(route.caregiver));
        }
        for (PatientId p : route.visits) {
            if (!instance.has_patient(p)) {
                throw ParseError(source, 0, 0, "unknown patient " + std::to_string(p));
            }
        }
    }
    for (PatientId p : doc.solution.request_bank) {
        if (!instance.has_patient(p)) {
            throw ParseError(source, 0, 0, "unknown banked patient " + std::to_string(p));
        }
    }
    if (doc.recorded_cost) {
        const CostBreakdown actual = solution_cost(doc.solution, instance);
        if (!close_enough(actual.total, doc.recorded_cost->total)) {
            throw ParseError(source, 0, 0,
                             "recorded cost " + text::format_number(doc.recorded_cost->total) +
                                 " differs from recomputed " + text::format_number(actual.total));
        }
    }
    return std::move(doc.solution);
}

Solution read_solution(const std::filesystem::path& path, const ProblemInstance& instance) {
    return read_solution_text(text::read_file(path), instance, path.string());
}

} // namespace hhsrp::io
