#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhsrp {

/// Patients are numbered 1..n. Node 0 is the care centre; node n+1 is the
/// same physical place and shares row/column 0 of every matrix.
using PatientId = int;
/// Caregivers are numbered 1..m.
using CaregiverId = int;

/// Tolerance applied to every "not later than" comparison on times.
inline constexpr double kTimeEpsilon = 1e-6;

/// Raised when input data violates a structural invariant of the model
/// (unknown ids, negative durations, malformed matrices, ...).
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

struct Patient {
    PatientId id = 0;
    double service_duration = 0.0;
    double tw_open = 0.0;
    double tw_close = 0.0;
    double penalty = 0.0;
    std::optional<Point> location;
};

struct Caregiver {
    CaregiverId id = 0;
    double max_working_time = 0.0;
    /// Sorted, duplicate free.
    std::vector<PatientId> eligible_patients;
};

struct BreakPolicy {
    double duration = 0.0;
    double window_open = 0.0;
    double window_close = 0.0;
};

enum class DistanceConvention {
    euclidean_exact,
    euclidean_truncate_1dp,
    euclidean_round_int,
    explicit_matrix,
};

std::string to_string(DistanceConvention convention);
DistanceConvention distance_convention_from_string(const std::string& text);

/// Dense row-major square matrix over physical nodes (depot + patients).
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t size, double fill = 0.0)
        : size_(size)
        , data_(size * size, fill) { }

    std::size_t size() const noexcept { return size_; }
    double operator()(std::size_t row, std::size_t col) const noexcept { return data_[row * size_ + col]; }
    double& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * size_ + col]; }
    double max_entry() const noexcept;

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t size_ = 0;
    std::vector<double> data_;
};

/// Distance between two points under a rounding convention.
double convention_distance(const Point& a, const Point& b, DistanceConvention convention);

/// Builds the matrix for `points` (index 0 = depot) under a Euclidean convention.
SquareMatrix euclidean_matrix(const std::vector<Point>& points, DistanceConvention convention);

class ProblemInstance {
public:
    /// `travel_cost` defaults to `travel_time` when absent. Throws ModelError
    /// on any violated invariant.
    ProblemInstance(std::string name,
                    std::vector<Patient> patients,
                    std::vector<Caregiver> caregivers,
                    BreakPolicy break_policy,
                    SquareMatrix travel_time,
                    std::optional<SquareMatrix> travel_cost,
                    DistanceConvention convention,
                    std::optional<Point> depot_location = std::nullopt);

    const std::string& name() const noexcept { return name_; }
    int patient_count() const noexcept { return static_cast<int>(patients_.size()); }
    int caregiver_count() const noexcept { return static_cast<int>(caregivers_.size()); }

    bool has_patient(PatientId id) const noexcept { return id >= 1 && id <= patient_count(); }
    bool has_caregiver(CaregiverId id) const noexcept { return id >= 1 && id <= caregiver_count(); }

    const Patient& patient(PatientId id) const;
    const Caregiver& caregiver(CaregiverId id) const;
    const std::vector<Patient>& patients() const noexcept { return patients_; }
    const std::vector<Caregiver>& caregivers() const noexcept { return caregivers_; }
    const BreakPolicy& break_policy() const noexcept { return break_policy_; }

    /// Node arguments follow the 0..n+1 numbering; n+1 folds onto the depot.
    double travel_time(int from, int to) const noexcept { return travel_time_(fold(from), fold(to)); }
    double travel_cost(int from, int to) const noexcept { return travel_cost_(fold(from), fold(to)); }

    const SquareMatrix& travel_time_matrix() const noexcept { return travel_time_; }
    const SquareMatrix& travel_cost_matrix() const noexcept { return travel_cost_; }
    bool has_distinct_cost_matrix() const noexcept { return distinct_cost_; }

    bool eligible(CaregiverId caregiver, PatientId patient) const noexcept {
        return eligibility_[static_cast<std::size_t>(caregiver - 1) * (patients_.size() + 1) +
                            static_cast<std::size_t>(patient)] != 0;
    }

    DistanceConvention distance_convention() const noexcept { return convention_; }
    const std::optional<Point>& depot_location() const noexcept { return depot_location_; }
    bool has_coordinates() const noexcept;

    double max_travel_time() const noexcept { return max_travel_time_; }
    double max_travel_cost() const noexcept { return max_travel_cost_; }
    /// Planning horizon length: the longest caregiver shift.
    double horizon() const noexcept { return horizon_; }
    double total_penalty() const noexcept;

private:
    std::size_t fold(int node) const noexcept {
        return node == patient_count() + 1 ? 0u : static_cast<std::size_t>(node);
    }

    std::string name_;
    std::vector<Patient> patients_;
    std::vector<Caregiver> caregivers_;
    BreakPolicy break_policy_;
    SquareMatrix travel_time_;
    SquareMatrix travel_cost_;
    bool distinct_cost_ = false;
    DistanceConvention convention_;
    std::optional<Point> depot_location_;
    std::vector<char> eligibility_;
    double max_travel_time_ = 0.0;
    double max_travel_cost_ = 0.0;
    double horizon_ = 0.0;
};

enum class BreakTiming { before_service, after_service };

/// Where the single lunch break of a route is taken. `position == visits.size()`
/// means on return to the depot, where the timing flag is irrelevant and
/// normalised to `before_service`.
struct BreakPlacement {
    std::size_t position = 0;
    BreakTiming timing = BreakTiming::before_service;

    static BreakPlacement at_depot(std::size_t route_length) { return {route_length, BreakTiming::before_service}; }
    friend bool operator==(const BreakPlacement&, const BreakPlacement&) = default;
};

struct RoutePlan {
    CaregiverId caregiver = 0;
    std::vector<PatientId> visits;
    BreakPlacement lunch;

    bool empty() const noexcept { return visits.empty(); }
    friend bool operator==(const RoutePlan&, const RoutePlan&) = default;
};

struct Solution {
    std::vector<RoutePlan> routes;
    /// Sorted ids of unvisited patients.
    std::vector<PatientId> request_bank;

    /// Every caregiver idle with the break at the depot, every patient banked.
    static Solution all_banked(const ProblemInstance& instance);

    std::size_t routed_count() const noexcept;
    friend bool operator==(const Solution&, const Solution&) = default;
};

/// Every break placement a route of `length` visits admits: each visit
/// before and after service, then the depot.
std::vector<BreakPlacement> all_break_placements(std::size_t length);

} // namespace hhsrp
