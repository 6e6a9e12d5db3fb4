#pragma once

#include <string>
#include <vector>

#include "hhsrp/core/model.hpp"

namespace hhsrp {

enum class ViolationCode {
    duplicate_visit,   ///< a patient routed twice, or listed twice in the bank
    missing_patient,   ///< neither routed nor banked
    banked_and_routed, ///< both routed and banked
    unknown_patient,   ///< id outside 1..n
    unknown_caregiver, ///< id outside 1..m
    break_missing,     ///< caregiver has no route, hence no break
    break_duplicated,  ///< caregiver owns more than one route, hence several breaks
    break_off_route,   ///< break position not on the route
    time_window,
    break_window,
    working_time,
    eligibility,       ///< visit by a caregiver not allowed to serve the patient
};

const char* to_string(ViolationCode code);

struct Violation {
    ViolationCode code;
    CaregiverId caregiver = 0;
    PatientId patient = 0;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(ViolationCode code) const noexcept;
    std::string summary() const;
};

/// Checks the partition of patients, one route (and break) per caregiver,
/// break anchoring, timeline feasibility, and eligibility. Every problem is
/// reported; malformed input never throws.
ValidationReport validate_solution(const Solution& solution, const ProblemInstance& instance);

} // namespace hhsrp
