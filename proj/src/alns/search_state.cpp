#include "hhsrp/alns/search_state.hpp"

#include <algorithm>
#include <stdexcept>

#include "hhsrp/core/validate.hpp"

namespace hhsrp::alns {

namespace {

double placement_return(const ProblemInstance& instance,
                        CaregiverId caregiver,
                        const std::vector<PatientId>& visits,
                        BreakPlacement placement) {
    return schedule::depot_return(instance, instance.caregiver(caregiver).max_working_time, visits, placement);
}

} // namespace

std::optional<BreakPlacement> best_break_placement(const ProblemInstance& instance,
                                                   CaregiverId caregiver,
                                                   const std::vector<PatientId>& visits,
                                                   std::optional<BreakPlacement> incumbent) {
    std::optional<BreakPlacement> best;
    double best_return = 0.0;
    if (incumbent && incumbent->position <= visits.size()) {
        const double ret = placement_return(instance, caregiver, visits, *incumbent);
        if (ret >= 0.0) {
            best = incumbent;
            best_return = ret;
        }
    }
    auto consider = [&](BreakPlacement placement) {
        const double ret = placement_return(instance, caregiver, visits, placement);
        if (ret >= 0.0 && (!best || ret < best_return)) {
            best = placement;
            best_return = ret;
        }
    };
    for (std::size_t i = 0; i < visits.size(); ++i) {
        consider({i, BreakTiming::before_service});
        consider({i, BreakTiming::after_service});
    }
    consider(BreakPlacement::at_depot(visits.size()));
    return best;
}

SearchState::SearchState(const ProblemInstance& instance, Solution solution)
    : instance_(&instance)
    , solution_(std::move(solution)) {
    const ValidationReport report = validate_solution(solution_, instance);
    if (!report.ok()) {
        throw ModelError("search state needs a feasible solution: " + report.summary());
    }
    std::sort(solution_.routes.begin(), solution_.routes.end(),
              [](const RoutePlan& a, const RoutePlan& b) { return a.caregiver < b.caregiver; });
    std::sort(solution_.request_bank.begin(), solution_.request_bank.end());

    route_of_.assign(static_cast<std::size_t>(instance.patient_count()) + 1, -1);
    caches_.resize(solution_.routes.size());
    for (std::size_t r = 0; r < solution_.routes.size(); ++r) {
        for (PatientId p : solution_.routes[r].visits) {
            route_of_[static_cast<std::size_t>(p)] = static_cast<int>(r);
        }
        refresh(r);
    }
    for (PatientId p : solution_.request_bank) {
        penalty_cost_ += instance.patient(p).penalty;
    }
}

SearchState SearchState::empty(const ProblemInstance& instance) {
    return SearchState(instance, Solution::all_banked(instance));
}

std::size_t SearchState::routed_count() const noexcept {
    return static_cast<std::size_t>(instance_->patient_count()) - solution_.request_bank.size();
}

std::size_t SearchState::index_in_route(PatientId patient) const {
    const int r = route_of(patient);
    if (r < 0) {
        throw std::logic_error("patient " + std::to_string(patient) + " is not routed");
    }
    const auto& visits = solution_.routes[static_cast<std::size_t>(r)].visits;
    return static_cast<std::size_t>(std::find(visits.begin(), visits.end(), patient) - visits.begin());
}

std::vector<PatientId> SearchState::routed_patients() const {
    std::vector<PatientId> out;
    out.reserve(routed_count());
    for (PatientId p = 1; p <= instance_->patient_count(); ++p) {
        if (route_of(p) >= 0) {
            out.push_back(p);
        }
    }
    return out;
}

void SearchState::refresh(std::size_t r) {
    const RoutePlan& plan = solution_.routes[r];
    RouteCache& c = caches_[r];
    const ProblemInstance& in = *instance_;
    const std::size_t n = plan.visits.size();

    travel_cost_ -= c.travel_cost;
    c.travel_cost = route_travel_cost(plan.visits, in);
    travel_cost_ += c.travel_cost;

    c.depart.resize(n);
    c.depart_free.resize(n);
    schedule::Clock clock;
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const bool here = plan.lunch.position == i;
        ok = ok && schedule::visit(clock, in, plan.visits[i], here && plan.lunch.timing == BreakTiming::before_service,
                                   here && plan.lunch.timing == BreakTiming::after_service) == Infeasibility::none;
        c.depart[i] = clock.time;
    }
    ok = ok && schedule::finish(clock, in, in.caregiver(plan.caregiver).max_working_time, plan.lunch.position >= n) ==
                   Infeasibility::none;
    if (!ok) {
        throw std::logic_error("route of caregiver " + std::to_string(plan.caregiver) + " became infeasible");
    }
    c.depot_return = clock.time;

    double t = 0.0;
    int node = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Patient& p = in.patients()[static_cast<std::size_t>(plan.visits[i] - 1)];
        t = std::max(t + in.travel_time(node, p.id), p.tw_open) + p.service_duration;
        node = p.id;
        c.depart_free[i] = t;
    }
}

double SearchState::insertion_cost_delta(std::size_t r, PatientId patient, std::size_t slot) const {
    const auto& visits = solution_.routes[r].visits;
    const int prev = slot == 0 ? 0 : visits[slot - 1];
    const int next = slot == visits.size() ? 0 : visits[slot];
    const ProblemInstance& in = *instance_;
    return in.travel_cost(prev, patient) + in.travel_cost(patient, next) - in.travel_cost(prev, next);
}

InsertionEvaluation SearchState::evaluate_insertion(std::size_t r, PatientId patient, std::size_t slot) const {
    InsertionEvaluation out;
    const RoutePlan& plan = solution_.routes[r];
    const RouteCache& c = caches_[r];
    const ProblemInstance& in = *instance_;
    if (!in.eligible(plan.caregiver, patient)) {
        return out;
    }
    const std::size_t n = plan.visits.size();
    const int prev = slot == 0 ? 0 : plan.visits[slot - 1];
    const double free_departure = slot == 0 ? 0.0 : c.depart_free[slot - 1];
    if (free_departure + in.travel_time(prev, patient) > in.patients()[static_cast<std::size_t>(patient - 1)].tw_close +
                                                              kTimeEpsilon) {
        return out;
    }
    out.cost_delta = insertion_cost_delta(r, patient, slot);

    const double limit = in.caregiver(plan.caregiver).max_working_time;
    const BreakPlacement incumbent = plan.lunch;
    const bool incumbent_at_depot = incumbent.position >= n;

    // Forward pass from `slot` on the extended route; placement uses the new indexing.
    auto run = [&](schedule::Clock clock, BreakPlacement placement) -> double {
        const bool at_new = placement.position == slot;
        if (schedule::visit(clock, in, patient, at_new && placement.timing == BreakTiming::before_service,
                            at_new && placement.timing == BreakTiming::after_service) != Infeasibility::none) {
            return -1.0;
        }
        for (std::size_t j = slot; j < n; ++j) {
            const bool here = placement.position == j + 1;
            if (schedule::visit(clock, in, plan.visits[j], here && placement.timing == BreakTiming::before_service,
                                here && placement.timing == BreakTiming::after_service) != Infeasibility::none) {
                return -1.0;
            }
            const bool incumbent_taken = !incumbent_at_depot && incumbent.position <= j;
            if (clock.break_taken == incumbent_taken && clock.time == c.depart[j]) {
                return c.depot_return;
            }
        }
        if (schedule::finish(clock, in, limit, placement.position == n + 1) != Infeasibility::none) {
            return -1.0;
        }
        return clock.time;
    };

    const schedule::Clock with_break{slot == 0 ? 0.0 : c.depart[slot - 1], prev,
                                     !incumbent_at_depot && incumbent.position < slot};
    const schedule::Clock without_break{free_departure, prev, false};

    auto consider = [&](const schedule::Clock& start, BreakPlacement placement) {
        const double ret = run(start, placement);
        if (ret >= 0.0 && (!out.feasible || ret < out.depot_return)) {
            out.feasible = true;
            out.depot_return = ret;
            out.best_break = placement;
        }
    };
    consider(with_break, shifted_for_insertion(incumbent, slot));
    consider(without_break, {slot, BreakTiming::before_service});
    consider(without_break, {slot, BreakTiming::after_service});
    return out;
}

void SearchState::bank_insert(PatientId patient) {
    auto& bank = solution_.request_bank;
    bank.insert(std::lower_bound(bank.begin(), bank.end(), patient), patient);
    penalty_cost_ += instance_->patient(patient).penalty;
}

void SearchState::bank_erase(PatientId patient) {
    auto& bank = solution_.request_bank;
    auto it = std::lower_bound(bank.begin(), bank.end(), patient);
    if (it == bank.end() || *it != patient) {
        throw std::logic_error("patient " + std::to_string(patient) + " is not banked");
    }
    bank.erase(it);
    penalty_cost_ -= instance_->patient(patient).penalty;
}

void SearchState::insert(PatientId patient, std::size_t r, std::size_t slot, BreakPlacement lunch) {
    bank_erase(patient);
    RoutePlan& plan = solution_.routes[r];
    plan.visits.insert(plan.visits.begin() + static_cast<std::ptrdiff_t>(slot), patient);
    plan.lunch = lunch.position >= plan.visits.size() ? BreakPlacement::at_depot(plan.visits.size()) : lunch;
    route_of_[static_cast<std::size_t>(patient)] = static_cast<int>(r);
    refresh(r);
}

bool SearchState::remove(PatientId patient) {
    const int ri = route_of(patient);
    if (ri < 0) {
        return false;
    }
    const auto r = static_cast<std::size_t>(ri);
    const RoutePlan& plan = solution_.routes[r];
    const std::size_t n = plan.visits.size();
    const std::size_t idx = index_in_route(patient);

    std::vector<PatientId> visits = plan.visits;
    visits.erase(visits.begin() + static_cast<std::ptrdiff_t>(idx));
    const std::size_t len = visits.size();
    const BreakPlacement incumbent = plan.lunch;

    std::optional<BreakPlacement> chosen;
    if (incumbent.position >= n || incumbent.position != idx) {
        BreakPlacement kept = incumbent;
        if (incumbent.position >= n) {
            kept = BreakPlacement::at_depot(len);
        } else if (incumbent.position > idx) {
            --kept.position;
        }
        if (placement_return(*instance_, plan.caregiver, visits, kept) >= 0.0) {
            chosen = kept;
        }
    } else {
        // host left: successor before service, then predecessor after service
        double best_return = 0.0;
        auto consider = [&](BreakPlacement placement) {
            const double ret = placement_return(*instance_, plan.caregiver, visits, placement);
            if (ret >= 0.0 && (!chosen || ret < best_return)) {
                chosen = placement;
                best_return = ret;
            }
        };
        consider(idx < len ? BreakPlacement{idx, BreakTiming::before_service} : BreakPlacement::at_depot(len));
        if (idx > 0) {
            consider({idx - 1, BreakTiming::after_service});
        }
    }
    if (!chosen) {
        chosen = best_break_placement(*instance_, plan.caregiver, visits);
    }
    if (!chosen) {
        return false;
    }

    RoutePlan& target = solution_.routes[r];
    target.visits = std::move(visits);
    target.lunch = *chosen;
    route_of_[static_cast<std::size_t>(patient)] = -1;
    bank_insert(patient);
    refresh(r);
    return true;
}

void SearchState::replace_route(std::size_t r, RoutePlan plan) {
    RoutePlan& target = solution_.routes[r];
    if (plan.caregiver != target.caregiver) {
        throw std::logic_error("replace_route: caregiver mismatch");
    }
    if (plan.visits.size() != target.visits.size()) {
        throw std::logic_error("replace_route: patient set changed");
    }
    for (PatientId p : target.visits) {
        route_of_[static_cast<std::size_t>(p)] = -1;
    }
    for (PatientId p : plan.visits) {
        if (route_of_[static_cast<std::size_t>(p)] >= 0 ||
            std::binary_search(solution_.request_bank.begin(), solution_.request_bank.end(), p)) {
            throw std::logic_error("replace_route: patient " + std::to_string(p) + " is already placed");
        }
        route_of_[static_cast<std::size_t>(p)] = static_cast<int>(r);
    }
    target = std::move(plan);
    refresh(r);
}

} // namespace hhsrp::alns
