#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hhsrp/core/model.hpp"
#include "hhsrp/core/schedule.hpp"

namespace hhsrp::alns {

/// Per-route quantities kept in sync with the route plan.
struct RouteCache {
    double travel_cost = 0.0;
    double depot_return = 0.0;
    /// Departure time from visit i under the incumbent schedule (break included).
    std::vector<double> depart;
    /// Departure time from visit i if no break were taken. Lower bound for any placement.
    std::vector<double> depart_free;
};

/// Solution under construction. Routes are indexed by caregiver (route r
/// belongs to caregiver r + 1) and every route is kept feasible.
class SearchState {
public:
    /// Throws ModelError if a route is infeasible or the solution is not a partition.
    SearchState(const ProblemInstance& instance, Solution solution);

    /// Every caregiver with an empty route, every patient banked.
    static SearchState empty(const ProblemInstance& instance);

    const ProblemInstance& instance() const noexcept { return *instance_; }
    const Solution& solution() const noexcept { return solution_; }
    std::size_t route_count() const noexcept { return solution_.routes.size(); }
    const RoutePlan& route(std::size_t r) const { return solution_.routes[r]; }
    const RouteCache& cache(std::size_t r) const { return caches_[r]; }
    const std::vector<PatientId>& bank() const noexcept { return solution_.request_bank; }

    double travel_cost() const noexcept { return travel_cost_; }
    double penalty_cost() const noexcept { return penalty_cost_; }
    double cost() const noexcept { return travel_cost_ + penalty_cost_; }
    std::size_t routed_count() const noexcept;

    /// Route index of a routed patient, or -1.
    int route_of(PatientId patient) const { return route_of_[static_cast<std::size_t>(patient)]; }
    std::size_t index_in_route(PatientId patient) const;
    /// Routed patients in increasing id order.
    std::vector<PatientId> routed_patients() const;

    /// Travel-cost change of inserting `patient` at `slot` of route r.
    double insertion_cost_delta(std::size_t r, PatientId patient, std::size_t slot) const;
    /// Same contract as insertion_delta(), evaluated incrementally from the cache.
    InsertionEvaluation evaluate_insertion(std::size_t r, PatientId patient, std::size_t slot) const;

    /// Moves a banked patient into route r. The placement must make the route feasible.
    void insert(PatientId patient, std::size_t r, std::size_t slot, BreakPlacement lunch);
    /// Moves a routed patient to the bank, re-placing the break if its host left.
    /// Returns false (state untouched) when no feasible placement remains.
    bool remove(PatientId patient);
    /// Replaces route r by a feasible plan over the same patients.
    void replace_route(std::size_t r, RoutePlan plan);

private:
    void refresh(std::size_t r);
    void bank_insert(PatientId patient);
    void bank_erase(PatientId patient);

    const ProblemInstance* instance_;
    Solution solution_;
    std::vector<RouteCache> caches_;
    std::vector<int> route_of_;
    double travel_cost_ = 0.0;
    double penalty_cost_ = 0.0;
};

/// Feasible placement with the earliest depot return, keeping `incumbent` on
/// ties; std::nullopt if none is feasible.
std::optional<BreakPlacement> best_break_placement(const ProblemInstance& instance,
                                                   CaregiverId caregiver,
                                                   const std::vector<PatientId>& visits,
                                                   std::optional<BreakPlacement> incumbent = std::nullopt);

} // namespace hhsrp::alns
