#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hhsrp/core/model.hpp"

namespace hhsrp::io {

struct CovidParams {
    int patients = 30;
    /// Defaults to ceil(patients / 20).
    std::optional<int> caregivers;
    /// Locations in km. When given, the first point is the depot and the next
    /// `patients` points are the patients; otherwise uniform in the box with
    /// the depot at its centre.
    std::optional<std::vector<Point>> points;
    double box_min_x = 0.0;
    double box_min_y = 0.0;
    double box_max_x = 10.0;
    double box_max_y = 10.0;
    double speed_kmh = 30.0;
    double penalty = 1000.0;
    std::uint64_t seed = 1;
    std::string name; ///< defaults to covid<n>_s<seed>
};

/// Counts per service type I/II/III (or caregivers able to serve up to that type).
struct TypeCounts {
    int type1 = 0;
    int type2 = 0;
    int type3 = 0;
};

/// 60/30/10 split by largest remainder; remainder ties go to Type-II, then III, then I.
TypeCounts service_type_counts(int patients);
/// Everyone serves Type-I, half (rounded half up) Type-II, a fifth Type-III.
TypeCounts caregiver_capabilities(int caregivers);
int default_caregiver_count(int patients);

struct GeneratedInstance {
    ProblemInstance instance;
    std::vector<int> patient_type;    ///< 1..3, index = patient id - 1
    std::vector<int> caregiver_level; ///< highest type served, index = caregiver id - 1
};

/// Shift [0, 540], 60-minute break inside [120, 300], gamma service times
/// (CV 0.25, means 10/15/20) truncated below at 1. Throws std::invalid_argument
/// on a degenerate box or bad counts.
GeneratedInstance generate_covid_like(const CovidParams& params);

} // namespace hhsrp::io
