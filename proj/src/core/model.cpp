#include "hhsrp/core/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hhsrp {

std::string to_string(DistanceConvention convention) {
    switch (convention) {
    case DistanceConvention::euclidean_exact:
        return "euclidean_exact";
    case DistanceConvention::euclidean_truncate_1dp:
        return "euclidean_truncate_1dp";
    case DistanceConvention::euclidean_round_int:
        return "euclidean_round_int";
    case DistanceConvention::explicit_matrix:
        return "explicit_matrix";
    }
    return "unknown";
}

DistanceConvention distance_convention_from_string(const std::string& text) {
    for (auto c : {DistanceConvention::euclidean_exact, DistanceConvention::euclidean_truncate_1dp,
                   DistanceConvention::euclidean_round_int, DistanceConvention::explicit_matrix}) {
        if (to_string(c) == text) {
            return c;
        }
    }
    throw ModelError("unknown distance convention '" + text + "'");
}

double SquareMatrix::max_entry() const noexcept {
    return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

double convention_distance(const Point& a, const Point& b, DistanceConvention convention) {
    const double d = std::hypot(a.x - b.x, a.y - b.y);
    switch (convention) {
    case DistanceConvention::euclidean_exact:
        return d;
    case DistanceConvention::euclidean_truncate_1dp:
        return std::floor(d * 10.0) / 10.0;
    case DistanceConvention::euclidean_round_int:
        return std::round(d);
    case DistanceConvention::explicit_matrix:
        break;
    }
    throw ModelError("explicit_matrix has no Euclidean distance");
}

SquareMatrix euclidean_matrix(const std::vector<Point>& points, DistanceConvention convention) {
    SquareMatrix m(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            m(i, j) = i == j ? 0.0 : convention_distance(points[i], points[j], convention);
        }
    }
    return m;
}

namespace {

void check_matrix(const SquareMatrix& m, std::size_t expected, const char* what) {
    if (m.size() != expected) {
        throw ModelError(std::string(what) + " matrix must be " + std::to_string(expected) + "x" +
                         std::to_string(expected));
    }
    for (std::size_t i = 0; i < expected; ++i) {
        for (std::size_t j = 0; j < expected; ++j) {
            const double v = m(i, j);
            if (!std::isfinite(v) || v < 0.0) {
                throw ModelError(std::string(what) + " matrix has a negative or non-finite entry at (" +
                                 std::to_string(i) + "," + std::to_string(j) + ")");
            }
            if (i == j && v != 0.0) {
                throw ModelError(std::string(what) + " matrix diagonal must be zero");
            }
        }
    }
}

} // namespace

ProblemInstance::ProblemInstance(std::string name,
                                 std::vector<Patient> patients,
                                 std::vector<Caregiver> caregivers,
                                 BreakPolicy break_policy,
                                 SquareMatrix travel_time,
                                 std::optional<SquareMatrix> travel_cost,
                                 DistanceConvention convention,
                                 std::optional<Point> depot_location)
    : name_(std::move(name))
    , patients_(std::move(patients))
    , caregivers_(std::move(caregivers))
    , break_policy_(break_policy)
    , travel_time_(std::move(travel_time))
    , convention_(convention)
    , depot_location_(depot_location) {
    const std::size_t n = patients_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Patient& p = patients_[i];
        if (p.id != static_cast<PatientId>(i + 1)) {
            throw ModelError("patient ids must be 1..n in order; found " + std::to_string(p.id) + " at position " +
                             std::to_string(i + 1));
        }
        if (p.tw_open > p.tw_close) {
            throw ModelError("patient " + std::to_string(p.id) + ": tw_open > tw_close");
        }
        if (p.service_duration < 0.0 || p.penalty < 0.0) {
            throw ModelError("patient " + std::to_string(p.id) + ": negative duration or penalty");
        }
    }
    if (break_policy_.window_open > break_policy_.window_close || break_policy_.duration < 0.0) {
        throw ModelError("break policy: window_open > window_close or negative duration");
    }
    check_matrix(travel_time_, n + 1, "travel_time");
    if (travel_cost) {
        check_matrix(*travel_cost, n + 1, "travel_cost");
        distinct_cost_ = !(*travel_cost == travel_time_);
        travel_cost_ = std::move(*travel_cost);
    } else {
        travel_cost_ = travel_time_;
    }

    eligibility_.assign(caregivers_.size() * (n + 1), 0);
    for (std::size_t k = 0; k < caregivers_.size(); ++k) {
        Caregiver& c = caregivers_[k];
        if (c.id != static_cast<CaregiverId>(k + 1)) {
            throw ModelError("caregiver ids must be 1..m in order; found " + std::to_string(c.id));
        }
        if (!(c.max_working_time > 0.0)) {
            throw ModelError("caregiver " + std::to_string(c.id) + ": max_working_time must be positive");
        }
        std::sort(c.eligible_patients.begin(), c.eligible_patients.end());
        c.eligible_patients.erase(std::unique(c.eligible_patients.begin(), c.eligible_patients.end()),
                                  c.eligible_patients.end());
        for (PatientId p : c.eligible_patients) {
            if (!has_patient(p)) {
                throw ModelError("caregiver " + std::to_string(c.id) + " lists unknown patient " + std::to_string(p));
            }
            eligibility_[k * (n + 1) + static_cast<std::size_t>(p)] = 1;
        }
        horizon_ = std::max(horizon_, c.max_working_time);
    }
    max_travel_time_ = travel_time_.max_entry();
    max_travel_cost_ = travel_cost_.max_entry();
}

const Patient& ProblemInstance::patient(PatientId id) const {
    if (!has_patient(id)) {
        throw ModelError("unknown patient id " + std::to_string(id));
    }
    return patients_[static_cast<std::size_t>(id - 1)];
}

const Caregiver& ProblemInstance::caregiver(CaregiverId id) const {
    if (!has_caregiver(id)) {
        throw ModelError("unknown caregiver id " + std::to_string(id));
    }
    return caregivers_[static_cast<std::size_t>(id - 1)];
}

bool ProblemInstance::has_coordinates() const noexcept {
    return depot_location_.has_value() &&
           std::all_of(patients_.begin(), patients_.end(), [](const Patient& p) { return p.location.has_value(); });
}

double ProblemInstance::total_penalty() const noexcept {
    return std::accumulate(patients_.begin(), patients_.end(), 0.0,
                           [](double acc, const Patient& p) { return acc + p.penalty; });
}

Solution Solution::all_banked(const ProblemInstance& instance) {
    Solution s;
    s.routes.reserve(static_cast<std::size_t>(instance.caregiver_count()));
    for (const Caregiver& c : instance.caregivers()) {
        s.routes.push_back(RoutePlan{c.id, {}, BreakPlacement::at_depot(0)});
    }
    s.request_bank.resize(static_cast<std::size_t>(instance.patient_count()));
    std::iota(s.request_bank.begin(), s.request_bank.end(), 1);
    return s;
}

std::size_t Solution::routed_count() const noexcept {
    std::size_t count = 0;
    for (const RoutePlan& r : routes) {
        count += r.visits.size();
    }
    return count;
}

std::vector<BreakPlacement> all_break_placements(std::size_t length) {
    std::vector<BreakPlacement> out;
    out.reserve(2 * length + 1);
    for (std::size_t i = 0; i < length; ++i) {
        out.push_back({i, BreakTiming::before_service});
        out.push_back({i, BreakTiming::after_service});
    }
    out.push_back(BreakPlacement::at_depot(length));
    return out;
}

} // namespace hhsrp
