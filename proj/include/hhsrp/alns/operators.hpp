#pragma once

#include <cstddef>
#include <vector>

#include "hhsrp/alns/config.hpp"
#include "hhsrp/alns/search_state.hpp"

namespace hhsrp::alns {

// Removal heuristics move up to q routed patients to the bank and return them
// in removal order. A patient whose removal would leave its route without a
// feasible break placement stays routed.

std::vector<PatientId> random_removal(SearchState& state, std::size_t q, Rng& rng);
/// Repeatedly removes the patient with the largest travel saving (ties: lower id).
std::vector<PatientId> worst_removal(SearchState& state, std::size_t q);
/// Relatedness alpha * t_ij / t_max + beta * (|a_i - a_j| + |b_i - b_j|) / H,
/// H being the longest shift.
std::vector<PatientId> shaw_removal(SearchState& state, std::size_t q, Rng& rng, double alpha, double beta);
std::vector<PatientId> proximity_removal(SearchState& state, std::size_t q, Rng& rng, double alpha);
std::vector<PatientId> time_removal(SearchState& state, std::size_t q, Rng& rng, double beta);
/// Empties one uniformly chosen non-empty route.
std::vector<PatientId> route_removal(SearchState& state, Rng& rng);

double shaw_relatedness(const ProblemInstance& instance, PatientId i, PatientId j, double alpha, double beta);

/// Additive insertion noise t_max * mu * U[-1, 1]; disabled sources add zero.
class NoiseSource {
public:
    NoiseSource() = default;
    NoiseSource(double amplitude, Rng& rng)
        : amplitude_(amplitude)
        , rng_(&rng) { }
    bool enabled() const noexcept { return rng_ != nullptr; }
    double draw();

private:
    double amplitude_ = 0.0;
    Rng* rng_ = nullptr;
};

struct InsertionMove {
    bool feasible = false;
    double score = 0.0; ///< travel delta plus noise
    double cost_delta = 0.0;
    std::size_t route = 0;
    std::size_t slot = 0;
    BreakPlacement lunch;
};

/// Cheapest feasible slot of `patient` in route r under noisy scores.
InsertionMove best_insertion_in_route(const SearchState& state, PatientId patient, std::size_t r, NoiseSource& noise);

/// Inserts banked patients by minimum cost until none fits. Returns the number inserted.
std::size_t greedy_insertion(SearchState& state, NoiseSource& noise);
/// Regret-k insertion; patients with fewer than k feasible routes go first.
std::size_t regret_insertion(SearchState& state, int k, NoiseSource& noise);

/// Dispatches an insertion kind, drawing noise from rng when the kind asks for it.
std::size_t apply_insertion(SearchState& state, InsertionKind kind, double noise_amplitude, Rng& rng);

} // namespace hhsrp::alns
