#include <algorithm>
#include <cmath>
#include <limits>

#include "hhsrp/alns/operators.hpp"

namespace hhsrp::alns {

namespace {

std::size_t uniform_index(std::size_t size, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

} // namespace

std::vector<PatientId> random_removal(SearchState& state, std::size_t q, Rng& rng) {
    std::vector<PatientId> pool = state.routed_patients();
    std::vector<PatientId> removed;
    while (removed.size() < q && !pool.empty()) {
        const std::size_t i = uniform_index(pool.size(), rng);
        const PatientId p = pool[i];
        pool[i] = pool.back();
        pool.pop_back();
        if (state.remove(p)) {
            removed.push_back(p);
        }
    }
    return removed;
}

std::vector<PatientId> worst_removal(SearchState& state, std::size_t q) {
    const ProblemInstance& in = state.instance();
    std::vector<PatientId> removed;
    std::vector<char> stuck(static_cast<std::size_t>(in.patient_count()) + 1, 0);
    while (removed.size() < q) {
        PatientId pick = 0;
        double best_saving = -std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < state.route_count(); ++r) {
            const auto& v = state.route(r).visits;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (stuck[static_cast<std::size_t>(v[i])]) {
                    continue;
                }
                const int prev = i == 0 ? 0 : v[i - 1];
                const int next = i + 1 == v.size() ? 0 : v[i + 1];
                const double saving =
                    in.travel_cost(prev, v[i]) + in.travel_cost(v[i], next) - in.travel_cost(prev, next);
                if (saving > best_saving || (saving == best_saving && v[i] < pick)) {
                    best_saving = saving;
                    pick = v[i];
                }
            }
        }
        if (pick == 0) {
            break;
        }
        if (state.remove(pick)) {
            removed.push_back(pick);
        } else {
            stuck[static_cast<std::size_t>(pick)] = 1;
        }
    }
    return removed;
}

double shaw_relatedness(const ProblemInstance& instance, PatientId i, PatientId j, double alpha, double beta) {
    const Patient& a = instance.patient(i);
    const Patient& b = instance.patient(j);
    const double t_max = instance.max_travel_time();
    const double h = instance.horizon();
    double value = 0.0;
    if (alpha != 0.0 && t_max > 0.0) {
        value += alpha * instance.travel_time(i, j) / t_max;
    }
    if (beta != 0.0 && h > 0.0) {
        value += beta * (std::abs(a.tw_open - b.tw_open) + std::abs(a.tw_close - b.tw_close)) / h;
    }
    return value;
}

std::vector<PatientId> shaw_removal(SearchState& state, std::size_t q, Rng& rng, double alpha, double beta) {
    const ProblemInstance& in = state.instance();
    std::vector<PatientId> removed;
    std::vector<PatientId> pool = state.routed_patients();
    // seed
    while (removed.empty() && !pool.empty() && q > 0) {
        const std::size_t i = uniform_index(pool.size(), rng);
        const PatientId p = pool[i];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
        if (state.remove(p)) {
            removed.push_back(p);
        }
    }
    while (removed.size() < q && !pool.empty()) {
        const PatientId ref = removed[uniform_index(removed.size(), rng)];
        std::size_t pick = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const double rel = shaw_relatedness(in, ref, pool[i], alpha, beta);
            if (rel < best) {
                best = rel;
                pick = i;
            }
        }
        const PatientId p = pool[pick];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        if (state.remove(p)) {
            removed.push_back(p);
        }
    }
    return removed;
}

std::vector<PatientId> proximity_removal(SearchState& state, std::size_t q, Rng& rng, double alpha) {
    return shaw_removal(state, q, rng, alpha, 0.0);
}

std::vector<PatientId> time_removal(SearchState& state, std::size_t q, Rng& rng, double beta) {
    return shaw_removal(state, q, rng, 0.0, beta);
}

std::vector<PatientId> route_removal(SearchState& state, Rng& rng) {
    std::vector<std::size_t> candidates;
    for (std::size_t r = 0; r < state.route_count(); ++r) {
        if (!state.route(r).empty()) {
            candidates.push_back(r);
        }
    }
    std::vector<PatientId> removed;
    if (candidates.empty()) {
        return removed;
    }
    const std::size_t r = candidates[uniform_index(candidates.size(), rng)];
    const std::vector<PatientId> visits = state.route(r).visits;
    for (auto it = visits.rbegin(); it != visits.rend(); ++it) {
        if (state.remove(*it)) {
            removed.push_back(*it);
        }
    }
    return removed;
}

} // namespace hhsrp::alns
