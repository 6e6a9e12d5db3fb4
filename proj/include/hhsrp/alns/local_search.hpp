#pragma once

#include <cstddef>

#include "hhsrp/alns/config.hpp"
#include "hhsrp/alns/search_state.hpp"

namespace hhsrp::alns {

/// Intra-route Or-opt: moves segments of 1..3 consecutive visits, orientation
/// kept, to any other position of the same route. First improvement on travel
/// cost until no strict improvement remains. The break follows its host visit
/// when that stays feasible, else the best feasible placement is used.
/// Returns the number of moves applied.
std::size_t or_opt(SearchState& state);

/// Re-optimizes the break placement of every route to the earliest depot
/// return. Visits and travel cost never change. Returns the number of routes
/// whose placement changed.
std::size_t break_local_search(SearchState& state);

/// Metropolis criterion: improvements and equal cost always pass, worse
/// candidates pass with probability exp(-(f_new - f_curr) / T).
bool sa_accept(double f_new, double f_curr, double temperature, Rng& rng);

/// gamma * f_init / ln 2, floored at 1e-6 so a zero-cost start still anneals.
double initial_temperature(double f_init, double gamma);

} // namespace hhsrp::alns
