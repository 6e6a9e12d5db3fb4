#include "hhsrp/core/schedule.hpp"

#include <string>

namespace hhsrp {

const char* to_string(Infeasibility kind) {
    switch (kind) {
    case Infeasibility::none:
        return "none";
    case Infeasibility::time_window:
        return "time_window";
    case Infeasibility::break_window:
        return "break_window";
    case Infeasibility::working_time:
        return "working_time";
    }
    return "unknown";
}

namespace {

void check_route_structure(const RoutePlan& route, const ProblemInstance& instance) {
    if (!instance.has_caregiver(route.caregiver)) {
        throw ModelError("route references unknown caregiver " + std::to_string(route.caregiver));
    }
    for (PatientId p : route.visits) {
        if (!instance.has_patient(p)) {
            throw ModelError("route of caregiver " + std::to_string(route.caregiver) +
                             " references unknown patient " + std::to_string(p));
        }
    }
    if (route.lunch.position > route.visits.size()) {
        throw ModelError("break position " + std::to_string(route.lunch.position) + " is past the depot of a route with " +
                         std::to_string(route.visits.size()) + " visits");
    }
}

} // namespace

ScheduleTimeline evaluate_route(const RoutePlan& route, const ProblemInstance& instance) {
    check_route_structure(route, instance);
    const double limit = instance.caregiver(route.caregiver).max_working_time;

    ScheduleTimeline out;
    out.service_start.assign(route.visits.size(), 0.0);
    schedule::Clock clock;
    for (std::size_t i = 0; i < route.visits.size(); ++i) {
        const bool here = route.lunch.position == i;
        const Infeasibility why =
            schedule::visit(clock, instance, route.visits[i], here && route.lunch.timing == BreakTiming::before_service,
                            here && route.lunch.timing == BreakTiming::after_service, &out.service_start[i],
                            &out.break_start);
        if (why != Infeasibility::none) {
            out.feasible = false;
            out.violation = why;
            out.violation_index = i;
            return out;
        }
    }
    const Infeasibility why =
        schedule::finish(clock, instance, limit, route.lunch.position == route.visits.size(), &out.break_start);
    out.depot_return = clock.time;
    if (why != Infeasibility::none) {
        out.feasible = false;
        out.violation = why;
        out.violation_index = route.visits.size();
    }
    return out;
}

double route_travel_cost(const std::vector<PatientId>& visits, const ProblemInstance& instance) {
    double cost = 0.0;
    int prev = 0;
    for (PatientId p : visits) {
        cost += instance.travel_cost(prev, p);
        prev = p;
    }
    return cost + instance.travel_cost(prev, 0);
}

CostBreakdown solution_cost(const Solution& solution, const ProblemInstance& instance) {
    CostBreakdown c;
    for (const RoutePlan& r : solution.routes) {
        for (PatientId p : r.visits) {
            if (!instance.has_patient(p)) {
                throw ModelError("solution references unknown patient " + std::to_string(p));
            }
        }
        c.travel_cost += route_travel_cost(r.visits, instance);
    }
    for (PatientId p : solution.request_bank) {
        c.penalty_cost += instance.patient(p).penalty;
    }
    c.total = c.travel_cost + c.penalty_cost;
    return c;
}

BreakPlacement shifted_for_insertion(BreakPlacement placement, std::size_t slot) noexcept {
    if (placement.position >= slot) {
        ++placement.position;
    }
    return placement;
}

InsertionEvaluation insertion_delta(const RoutePlan& route,
                                    PatientId patient,
                                    std::size_t slot,
                                    const ProblemInstance& instance) {
    check_route_structure(route, instance);
    if (!instance.has_patient(patient)) {
        throw ModelError("unknown patient id " + std::to_string(patient));
    }
    if (slot > route.visits.size()) {
        throw ModelError("insertion slot past the end of the route");
    }
    const int prev = slot == 0 ? 0 : route.visits[slot - 1];
    const int next = slot == route.visits.size() ? 0 : route.visits[slot];

    InsertionEvaluation out;
    out.cost_delta = instance.travel_cost(prev, patient) + instance.travel_cost(patient, next) -
                     instance.travel_cost(prev, next);

    if (!instance.eligible(route.caregiver, patient)) {
        return out;
    }
    RoutePlan candidate = route;
    candidate.visits.insert(candidate.visits.begin() + static_cast<std::ptrdiff_t>(slot), patient);
    const BreakPlacement options[] = {shifted_for_insertion(route.lunch, slot),
                                      {slot, BreakTiming::before_service},
                                      {slot, BreakTiming::after_service}};
    for (const BreakPlacement& b : options) {
        candidate.lunch = b;
        const ScheduleTimeline t = evaluate_route(candidate, instance);
        if (t.feasible && (!out.feasible || t.depot_return < out.depot_return)) {
            out.feasible = true;
            out.best_break = b;
            out.depot_return = t.depot_return;
        }
    }
    return out;
}

} // namespace hhsrp
