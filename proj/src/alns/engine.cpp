#include "hhsrp/alns/engine.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "hhsrp/alns/local_search.hpp"
#include "hhsrp/alns/operators.hpp"

namespace hhsrp::alns {

namespace {

constexpr double kStrict = 1e-9;

void apply_removal(SearchState& state, RemovalKind kind, std::size_t q, const SearchConfig& config, Rng& rng) {
    switch (kind) {
    case RemovalKind::random:
        random_removal(state, q, rng);
        break;
    case RemovalKind::worst:
        worst_removal(state, q);
        break;
    case RemovalKind::shaw:
        shaw_removal(state, q, rng, config.shaw_alpha, config.shaw_beta);
        break;
    case RemovalKind::proximity:
        proximity_removal(state, q, rng, config.shaw_alpha);
        break;
    case RemovalKind::time:
        time_removal(state, q, rng, config.shaw_beta);
        break;
    case RemovalKind::route:
        route_removal(state, rng);
        break;
    }
}

} // namespace

void write_trace(std::ostream& out, const std::vector<TraceRecord>& records) {
    out << "iteration\tremoval\tinsertion\trestart\toropt\tbreakls\taccepted\tf_curr\tf_best\tT\tbank\n";
    for (const TraceRecord& t : records) {
        out << t.iteration << '\t' << to_string(t.removal) << '\t' << to_string(t.insertion) << '\t' << t.restart
            << '\t' << t.or_opt << '\t' << t.break_ls << '\t' << t.accepted << '\t' << t.f_curr << '\t' << t.f_best
            << '\t' << t.temperature << '\t' << t.bank << '\n';
    }
}

std::size_t draw_removal_count(int patients, const SearchConfig& config, Rng& rng) {
    if (patients <= 0) {
        return 0;
    }
    const auto lo = static_cast<long>(std::ceil(config.removal_min_fraction * patients - 1e-9));
    const auto hi = static_cast<long>(std::floor(config.removal_max_fraction * patients + 1e-9));
    if (lo > hi || hi < 1) {
        return static_cast<std::size_t>(
            std::max<long>(1, static_cast<long>(std::floor(config.removal_min_fraction * patients + 1e-9))));
    }
    return static_cast<std::size_t>(std::uniform_int_distribution<long>(std::max<long>(lo, 1), hi)(rng));
}

SearchState build_initial(const ProblemInstance& instance, const SearchConfig& config, Rng& rng) {
    SearchState state = SearchState::empty(instance);
    NoiseSource noise(instance.max_travel_cost() * config.noise_mu, rng);
    regret_insertion(state, 3, noise);
    return state;
}

long stopping_limit(long theta, long theta_bar, const std::vector<long>& improvements) {
    long limit = theta + theta_bar;
    for (;;) {
        const bool recent = std::any_of(improvements.begin(), improvements.end(),
                                        [&](long t) { return t > limit - theta_bar && t <= limit; });
        if (!recent) {
            return limit;
        }
        limit += theta_bar;
    }
}

RunResult run(const ProblemInstance& instance, const SearchConfig& config) {
    config.validate();
    Rng rng(config.seed);
    RunResult result;

    SearchState curr = build_initial(instance, config, rng);
    SearchState best = curr;
    result.initial_cost = curr.cost();
    double temperature = initial_temperature(curr.cost(), config.gamma);
    result.initial_temperature = temperature;

    const double noise_amplitude = instance.max_travel_cost() * config.noise_mu;
    const int n = instance.patient_count();
    long since_improvement = 0;
    long last_improvement = 0;
    long limit = config.theta + config.theta_bar;

    auto note_best = [&](const SearchState& candidate, long t) {
        const double f = candidate.cost();
        if (f < best.cost() - kStrict) {
            best = candidate;
            last_improvement = t;
            return true;
        }
        if (f <= best.cost() + kStrict) {
            best = candidate;
        }
        return false;
    };

    long t = 1;
    for (; t <= limit; ++t) {
        TraceRecord rec;
        rec.iteration = t;
        bool improved = false;

        SearchState next = curr;
        if (since_improvement >= config.omega) {
            rec.restart = true;
            ++result.restarts;
            since_improvement = 0;
            if (config.restart_reset_to_best) {
                curr = best;
                next = best;
            }
            rec.removal = RemovalKind::random;
            rec.insertion = InsertionKind::regret3;
            random_removal(next, draw_removal_count(n, config, rng), rng);
            NoiseSource quiet;
            regret_insertion(next, 3, quiet);
        } else {
            rec.removal = static_cast<RemovalKind>(std::uniform_int_distribution<int>(0, kRemovalKinds - 1)(rng));
            const std::size_t q = draw_removal_count(n, config, rng);
            apply_removal(next, rec.removal, q, config, rng);
            rec.insertion = static_cast<InsertionKind>(std::uniform_int_distribution<int>(0, kInsertionKinds - 1)(rng));
            apply_insertion(next, rec.insertion, noise_amplitude, rng);
        }

        rec.or_opt = t % config.tau_or == 0;
        rec.break_ls = t % config.tau_break == 0;
        auto local_search = [&](SearchState& target) {
            if (rec.or_opt) {
                or_opt(target);
                ++result.or_opt_calls;
            }
            if (rec.break_ls) {
                break_local_search(target);
                ++result.break_ls_calls;
            }
        };

        if (config.local_search_on_new) {
            local_search(next);
        }
        rec.accepted = sa_accept(next.cost(), curr.cost(), temperature, rng);
        if (rec.accepted) {
            curr = std::move(next);
            improved = note_best(curr, t) || improved;
        }
        if (!config.local_search_on_new && (rec.or_opt || rec.break_ls)) {
            local_search(curr);
            improved = note_best(curr, t) || improved;
        }

        since_improvement = improved ? 0 : since_improvement + 1;
        temperature *= config.cooling;

        if (config.trace) {
            rec.f_curr = curr.cost();
            rec.f_best = best.cost();
            rec.temperature = temperature;
            rec.bank = curr.bank().size();
            result.trace.push_back(rec);
        }
        if (t == limit && last_improvement > limit - config.theta_bar) {
            limit += config.theta_bar;
        }
    }

    result.iterations = t - 1;
    result.best = best.solution();
    result.best_cost = solution_cost(result.best, instance);
    return result;
}

} // namespace hhsrp::alns
