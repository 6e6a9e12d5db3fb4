#include "hhsrp/alns/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hhsrp::alns {

namespace {

constexpr double kImprovement = 1e-9;

/// One first-improvement Or-opt move on route r, or false if none.
bool improve_route(SearchState& state, std::size_t r) {
    const ProblemInstance& in = state.instance();
    const RoutePlan& plan = state.route(r);
    const auto& v = plan.visits;
    const std::size_t n = v.size();
    auto node = [&v, n](std::ptrdiff_t i) { return i < 0 || static_cast<std::size_t>(i) >= n ? 0 : v[i]; };

    for (std::size_t len = 1; len <= 3 && len < n; ++len) {
        for (std::size_t start = 0; start + len <= n; ++start) {
            const int first = v[start];
            const int last = v[start + len - 1];
            const int prev = node(static_cast<std::ptrdiff_t>(start) - 1);
            const int next = node(static_cast<std::ptrdiff_t>(start + len));
            const double gain = in.travel_cost(prev, first) + in.travel_cost(last, next) - in.travel_cost(prev, next);

            std::vector<PatientId> rest;
            rest.reserve(n - len);
            rest.insert(rest.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(start));
            rest.insert(rest.end(), v.begin() + static_cast<std::ptrdiff_t>(start + len), v.end());

            for (std::size_t pos = 0; pos <= rest.size(); ++pos) {
                if (pos == start) {
                    continue; // original position
                }
                const int a = pos == 0 ? 0 : rest[pos - 1];
                const int b = pos == rest.size() ? 0 : rest[pos];
                const double add = in.travel_cost(a, first) + in.travel_cost(last, b) - in.travel_cost(a, b);
                if (add - gain >= -kImprovement) {
                    continue;
                }
                std::vector<PatientId> moved = rest;
                moved.insert(moved.begin() + static_cast<std::ptrdiff_t>(pos), v.begin() + static_cast<std::ptrdiff_t>(start),
                             v.begin() + static_cast<std::ptrdiff_t>(start + len));

                std::optional<BreakPlacement> lunch;
                if (plan.lunch.position >= n) {
                    lunch = BreakPlacement::at_depot(n);
                } else {
                    const PatientId host = v[plan.lunch.position];
                    const auto at = static_cast<std::size_t>(std::find(moved.begin(), moved.end(), host) - moved.begin());
                    lunch = BreakPlacement{at, plan.lunch.timing};
                }
                if (schedule::depot_return(in, in.caregiver(plan.caregiver).max_working_time, moved, *lunch) < 0.0) {
                    lunch = best_break_placement(in, plan.caregiver, moved);
                }
                if (!lunch) {
                    continue;
                }
                state.replace_route(r, RoutePlan{plan.caregiver, std::move(moved), *lunch});
                return true;
            }
        }
    }
    return false;
}

} // namespace

std::size_t or_opt(SearchState& state) {
    std::size_t moves = 0;
    for (std::size_t r = 0; r < state.route_count(); ++r) {
        while (improve_route(state, r)) {
            ++moves;
        }
    }
    return moves;
}

std::size_t break_local_search(SearchState& state) {
    std::size_t changed = 0;
    for (std::size_t r = 0; r < state.route_count(); ++r) {
        const RoutePlan& plan = state.route(r);
        const auto best = best_break_placement(state.instance(), plan.caregiver, plan.visits, plan.lunch);
        if (best && !(*best == plan.lunch)) {
            state.replace_route(r, RoutePlan{plan.caregiver, plan.visits, *best});
            ++changed;
        }
    }
    return changed;
}

bool sa_accept(double f_new, double f_curr, double temperature, Rng& rng) {
    if (f_new <= f_curr) {
        return true;
    }
    if (temperature <= 0.0) {
        return false;
    }
    const double p = std::exp(-(f_new - f_curr) / temperature);
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

double initial_temperature(double f_init, double gamma) {
    return std::max(gamma * f_init / std::numbers::ln2, 1e-6);
}

} // namespace hhsrp::alns
