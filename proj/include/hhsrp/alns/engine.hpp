#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "hhsrp/alns/config.hpp"
#include "hhsrp/alns/search_state.hpp"
#include "hhsrp/core/model.hpp"
#include "hhsrp/core/schedule.hpp"

namespace hhsrp::alns {

struct TraceRecord {
    long iteration = 0;
    RemovalKind removal = RemovalKind::random;
    InsertionKind insertion = InsertionKind::greedy;
    bool restart = false;
    bool or_opt = false;
    bool break_ls = false;
    bool accepted = false;
    double f_curr = 0.0;
    double f_best = 0.0;
    double temperature = 0.0; ///< after cooling, i.e. T_start * c^iteration
    std::size_t bank = 0;     ///< bank size of the current solution
};

/// Tab-separated, header row first.
void write_trace(std::ostream& out, const std::vector<TraceRecord>& records);

struct RunResult {
    Solution best;
    CostBreakdown best_cost;
    double initial_cost = 0.0;
    double initial_temperature = 0.0;
    long iterations = 0;
    long restarts = 0;
    long or_opt_calls = 0;
    long break_ls_calls = 0;
    std::vector<TraceRecord> trace; ///< filled when config.trace is set
};

/// q drawn uniformly from [ceil(0.1 n), floor(0.3 n)] (fractions from config);
/// an empty range falls back to max(1, floor(min_fraction * n)).
std::size_t draw_removal_count(int patients, const SearchConfig& config, Rng& rng);

/// Regret-3 with noise from the all-banked solution.
SearchState build_initial(const ProblemInstance& instance, const SearchConfig& config, Rng& rng);

/// Runs the search with the periods in `config` (see SearchConfig::for_variant).
RunResult run(const ProblemInstance& instance, const SearchConfig& config);

/// Number of iterations the stopping rule allows given the iterations at which
/// s_best strictly improved (sorted). Exposed for testing the extension rule.
long stopping_limit(long theta, long theta_bar, const std::vector<long>& improvements);

} // namespace hhsrp::alns
