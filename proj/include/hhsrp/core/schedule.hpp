#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "hhsrp/core/model.hpp"

namespace hhsrp {

enum class Infeasibility {
    none,
    time_window,  ///< service would start after tw_close
    break_window, ///< break would start after the break window closes
    working_time, ///< depot return after the caregiver's shift limit
};

const char* to_string(Infeasibility kind);

struct ScheduleTimeline {
    /// Service start per visit; entries past a violation are unspecified.
    std::vector<double> service_start;
    double break_start = 0.0;
    double depot_return = 0.0;
    bool feasible = true;
    Infeasibility violation = Infeasibility::none;
    /// Visit index of the violation (route length for the depot).
    std::size_t violation_index = 0;
};

/// Earliest-start forward propagation of one route. Throws ModelError when the
/// route references an unknown caregiver or patient or a break position past
/// the depot; infeasibility is reported in the returned timeline.
ScheduleTimeline evaluate_route(const RoutePlan& route, const ProblemInstance& instance);

/// Sum of travel cost over depot -> visits -> depot.
double route_travel_cost(const std::vector<PatientId>& visits, const ProblemInstance& instance);

struct CostBreakdown {
    double travel_cost = 0.0;
    double penalty_cost = 0.0;
    double total = 0.0;
};

/// Objective value: travel over all routes plus penalties of banked patients.
CostBreakdown solution_cost(const Solution& solution, const ProblemInstance& instance);

struct InsertionEvaluation {
    double cost_delta = 0.0;
    BreakPlacement best_break;
    double depot_return = 0.0;
    bool feasible = false;
};

/// Break placement kept attached to the same node when a visit is inserted at `slot`.
BreakPlacement shifted_for_insertion(BreakPlacement placement, std::size_t slot) noexcept;

/// Travel-cost increase and best break placement for inserting `patient` at
/// `slot` (0..route length). Candidates are the incumbent placement and the two
/// placements at the inserted patient; the one with the earliest depot return
/// wins, ties favouring that order. Re-evaluates from scratch.
InsertionEvaluation insertion_delta(const RoutePlan& route,
                                    PatientId patient,
                                    std::size_t slot,
                                    const ProblemInstance& instance);

namespace schedule {

/// Running state of the forward pass along a route.
struct Clock {
    double time = 0.0;
    int node = 0;
    bool break_taken = false;
};

inline bool take_break(Clock& clock, const BreakPolicy& policy, double* break_start = nullptr) noexcept {
    const double start = std::max(clock.time, policy.window_open);
    if (start > policy.window_close + kTimeEpsilon) {
        return false;
    }
    if (break_start != nullptr) {
        *break_start = start;
    }
    clock.time = start + policy.duration;
    clock.break_taken = true;
    return true;
}

/// Travels to `patient` and serves it, taking the break on arrival or after
/// service when asked.
inline Infeasibility visit(Clock& clock,
                           const ProblemInstance& instance,
                           PatientId patient,
                           bool break_before,
                           bool break_after,
                           double* service_start = nullptr,
                           double* break_start = nullptr) noexcept {
    const Patient& p = instance.patients()[static_cast<std::size_t>(patient - 1)];
    clock.time += instance.travel_time(clock.node, patient);
    clock.node = patient;
    if (break_before && !take_break(clock, instance.break_policy(), break_start)) {
        return Infeasibility::break_window;
    }
    const double start = std::max(clock.time, p.tw_open);
    if (start > p.tw_close + kTimeEpsilon) {
        return Infeasibility::time_window;
    }
    if (service_start != nullptr) {
        *service_start = start;
    }
    clock.time = start + p.service_duration;
    if (break_after && !take_break(clock, instance.break_policy(), break_start)) {
        return Infeasibility::break_window;
    }
    return Infeasibility::none;
}

/// Travels back to the depot, optionally taking the break there, and checks the shift limit.
inline Infeasibility finish(Clock& clock,
                            const ProblemInstance& instance,
                            double max_working_time,
                            bool break_at_depot,
                            double* break_start = nullptr) noexcept {
    clock.time += instance.travel_time(clock.node, 0);
    clock.node = 0;
    if (break_at_depot && !take_break(clock, instance.break_policy(), break_start)) {
        return Infeasibility::break_window;
    }
    if (clock.time > max_working_time + kTimeEpsilon) {
        return Infeasibility::working_time;
    }
    return Infeasibility::none;
}

/// Depot return time of the sequence produced by `at(i)` for i in [0, length)
/// with the given break placement, or a negative value if infeasible. No
/// allocation; used on hot paths.
template <typename VisitAt>
double depot_return(const ProblemInstance& instance,
                    double max_working_time,
                    std::size_t length,
                    VisitAt&& at,
                    BreakPlacement placement) noexcept {
    Clock clock;
    for (std::size_t i = 0; i < length; ++i) {
        const bool here = placement.position == i;
        const bool before = here && placement.timing == BreakTiming::before_service;
        const bool after = here && placement.timing == BreakTiming::after_service;
        if (visit(clock, instance, at(i), before, after) != Infeasibility::none) {
            return -1.0;
        }
    }
    if (finish(clock, instance, max_working_time, placement.position >= length) != Infeasibility::none) {
        return -1.0;
    }
    return clock.time;
}

inline double depot_return(const ProblemInstance& instance,
                           double max_working_time,
                           const std::vector<PatientId>& visits,
                           BreakPlacement placement) noexcept {
    return depot_return(instance, max_working_time, visits.size(),
                        [&visits](std::size_t i) { return visits[i]; }, placement);
}

} // namespace schedule

} // namespace hhsrp
