#include "hhsrp/core/validate.hpp"

#include <algorithm>
#include <sstream>

#include "hhsrp/core/schedule.hpp"

namespace hhsrp {

const char* to_string(ViolationCode code) {
    switch (code) {
    case ViolationCode::duplicate_visit:
        return "duplicate_visit";
    case ViolationCode::missing_patient:
        return "missing_patient";
    case ViolationCode::banked_and_routed:
        return "banked_and_routed";
    case ViolationCode::unknown_patient:
        return "unknown_patient";
    case ViolationCode::unknown_caregiver:
        return "unknown_caregiver";
    case ViolationCode::break_missing:
        return "break_missing";
    case ViolationCode::break_duplicated:
        return "break_duplicated";
    case ViolationCode::break_off_route:
        return "break_off_route";
    case ViolationCode::time_window:
        return "time_window";
    case ViolationCode::break_window:
        return "break_window";
    case ViolationCode::working_time:
        return "working_time";
    case ViolationCode::eligibility:
        return "eligibility";
    }
    return "unknown";
}

bool ValidationReport::has(ViolationCode code) const noexcept {
    return std::any_of(violations.begin(), violations.end(), [code](const Violation& v) { return v.code == code; });
}

std::string ValidationReport::summary() const {
    if (ok()) {
        return "ok";
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        const Violation& v = violations[i];
        os << (i ? "; " : "") << to_string(v.code);
        if (!v.detail.empty()) {
            os << " (" << v.detail << ")";
        }
    }
    return os.str();
}

ValidationReport validate_solution(const Solution& solution, const ProblemInstance& instance) {
    ValidationReport report;
    auto add = [&report](ViolationCode code, CaregiverId k, PatientId p, std::string detail) {
        report.violations.push_back(Violation{code, k, p, std::move(detail)});
    };

    const int n = instance.patient_count();
    std::vector<int> routed(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> banked(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> routes_per_caregiver(static_cast<std::size_t>(instance.caregiver_count()) + 1, 0);

    for (const RoutePlan& route : solution.routes) {
        const bool caregiver_known = instance.has_caregiver(route.caregiver);
        if (!caregiver_known) {
            add(ViolationCode::unknown_caregiver, route.caregiver, 0,
                "caregiver " + std::to_string(route.caregiver));
        } else {
            ++routes_per_caregiver[static_cast<std::size_t>(route.caregiver)];
        }
        bool structurally_sound = caregiver_known;
        for (PatientId p : route.visits) {
            if (!instance.has_patient(p)) {
                add(ViolationCode::unknown_patient, route.caregiver, p, "patient " + std::to_string(p));
                structurally_sound = false;
                continue;
            }
            if (++routed[static_cast<std::size_t>(p)] == 2) {
                add(ViolationCode::duplicate_visit, route.caregiver, p, "patient " + std::to_string(p) + " routed twice");
            }
            if (caregiver_known && !instance.eligible(route.caregiver, p)) {
                add(ViolationCode::eligibility, route.caregiver, p,
                    "caregiver " + std::to_string(route.caregiver) + " may not serve patient " + std::to_string(p));
            }
        }
        if (route.lunch.position > route.visits.size()) {
            add(ViolationCode::break_off_route, route.caregiver, 0,
                "break position " + std::to_string(route.lunch.position) + " on a route of " +
                    std::to_string(route.visits.size()) + " visits");
            structurally_sound = false;
        }
        if (!structurally_sound) {
            continue;
        }
        const ScheduleTimeline timeline = evaluate_route(route, instance);
        if (!timeline.feasible) {
            const PatientId where =
                timeline.violation_index < route.visits.size() ? route.visits[timeline.violation_index] : 0;
            const std::string at = where ? "at patient " + std::to_string(where) : "at depot";
            switch (timeline.violation) {
            case Infeasibility::time_window:
                add(ViolationCode::time_window, route.caregiver, where, at);
                break;
            case Infeasibility::break_window:
                add(ViolationCode::break_window, route.caregiver, where, at);
                break;
            case Infeasibility::working_time:
                add(ViolationCode::working_time, route.caregiver, 0,
                    "return " + std::to_string(timeline.depot_return));
                break;
            case Infeasibility::none:
                break;
            }
        }
    }

    for (PatientId p : solution.request_bank) {
        if (!instance.has_patient(p)) {
            add(ViolationCode::unknown_patient, 0, p, "banked patient " + std::to_string(p));
            continue;
        }
        if (++banked[static_cast<std::size_t>(p)] == 2) {
            add(ViolationCode::duplicate_visit, 0, p, "patient " + std::to_string(p) + " banked twice");
        }
    }

    for (PatientId p = 1; p <= n; ++p) {
        const auto i = static_cast<std::size_t>(p);
        if (routed[i] == 0 && banked[i] == 0) {
            add(ViolationCode::missing_patient, 0, p, "patient " + std::to_string(p));
        } else if (routed[i] > 0 && banked[i] > 0) {
            add(ViolationCode::banked_and_routed, 0, p, "patient " + std::to_string(p));
        }
    }

    for (CaregiverId k = 1; k <= instance.caregiver_count(); ++k) {
        const int count = routes_per_caregiver[static_cast<std::size_t>(k)];
        if (count == 0) {
            add(ViolationCode::break_missing, k, 0, "caregiver " + std::to_string(k) + " has no route");
        } else if (count > 1) {
            add(ViolationCode::break_duplicated, k, 0,
                "caregiver " + std::to_string(k) + " has " + std::to_string(count) + " routes");
        }
    }
    return report;
}

} // namespace hhsrp
