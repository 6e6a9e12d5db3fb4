#pragma once

// Record lines shared by the instance file and the import sidecar.

#include "hhsrp/core/model.hpp"
#include "text.hpp"

namespace hhsrp::io::records {

/// break <duration> <open> <close>
inline BreakPolicy parse_break(const text::Reader& r, const text::Line& line) {
    r.expect_count(line, 4);
    return BreakPolicy{r.number(line, 1), r.number(line, 2), r.number(line, 3)};
}

/// caregiver <id> <max_working_time> all|none|<patient ids...>
inline Caregiver parse_caregiver(const text::Reader& r, const text::Line& line, int patients) {
    r.expect_at_least(line, 4);
    Caregiver c;
    c.id = static_cast<CaregiverId>(r.integer(line, 1));
    c.max_working_time = r.number(line, 2);
    const std::string& first = line.tokens[3].text;
    if (first == "all" || first == "none") {
        r.expect_count(line, 4);
        if (first == "all") {
            for (PatientId p = 1; p <= patients; ++p) {
                c.eligible_patients.push_back(p);
            }
        }
        return c;
    }
    for (std::size_t t = 3; t < line.tokens.size(); ++t) {
        const long p = r.integer(line, t);
        if (p < 1 || p > patients) {
            r.fail(line, t, "patient " + std::to_string(p) + " out of range 1.." + std::to_string(patients));
        }
        if (!c.eligible_patients.empty() && p <= c.eligible_patients.back()) {
            r.fail(line, t, "eligible patients must be strictly increasing");
        }
        c.eligible_patients.push_back(static_cast<PatientId>(p));
    }
    return c;
}

inline DistanceConvention parse_distance(const text::Reader& r, const text::Line& line) {
    r.expect_count(line, 2);
    try {
        return distance_convention_from_string(line.tokens[1].text);
    } catch (const std::exception& e) {
        r.fail(line, 1, e.what());
    }
}

inline std::string format_caregiver(const Caregiver& c, int patients) {
    std::string out = "caregiver " + std::to_string(c.id) + " " + text::format_number(c.max_working_time);
    if (static_cast<int>(c.eligible_patients.size()) == patients) {
        return out + " all";
    }
    if (c.eligible_patients.empty()) {
        return out + " none";
    }
    for (PatientId p : c.eligible_patients) {
        out += " " + std::to_string(p);
    }
    return out;
}

} // namespace hhsrp::io::records
