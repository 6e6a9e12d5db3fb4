#include <algorithm>
#include <limits>

#include "hhsrp/alns/operators.hpp"

namespace hhsrp::alns {

double NoiseSource::draw() {
    if (rng_ == nullptr) {
        return 0.0;
    }
    return amplitude_ * std::uniform_real_distribution<double>(-1.0, 1.0)(*rng_);
}

InsertionMove best_insertion_in_route(const SearchState& state, PatientId patient, std::size_t r, NoiseSource& noise) {
    InsertionMove move;
    const RoutePlan& plan = state.route(r);
    if (!state.instance().eligible(plan.caregiver, patient)) {
        return move;
    }
    const std::size_t slots = plan.visits.size() + 1;
    struct Scored {
        double score;
        double delta;
        std::size_t slot;
    };
    std::vector<Scored> order;
    order.reserve(slots);
    for (std::size_t s = 0; s < slots; ++s) {
        const double delta = state.insertion_cost_delta(r, patient, s);
        order.push_back({delta + noise.draw(), delta, s});
    }
    std::sort(order.begin(), order.end(),
              [](const Scored& a, const Scored& b) { return a.score < b.score || (a.score == b.score && a.slot < b.slot); });
    for (const Scored& c : order) {
        const InsertionEvaluation eval = state.evaluate_insertion(r, patient, c.slot);
        if (eval.feasible) {
            move.feasible = true;
            move.score = c.score;
            move.cost_delta = c.delta;
            move.route = r;
            move.slot = c.slot;
            move.lunch = eval.best_break;
            return move;
        }
    }
    return move;
}

namespace {

/// Best move per (pending patient, route), recomputed per route after a commit.
class MoveTable {
public:
    MoveTable(const SearchState& state, NoiseSource& noise)
        : state_(state)
        , noise_(noise)
        , pending_(state.bank())
        , routes_(state.route_count()) {
        moves_.resize(pending_.size() * routes_);
        for (std::size_t i = 0; i < pending_.size(); ++i) {
            for (std::size_t r = 0; r < routes_; ++r) {
                slot(i, r) = best_insertion_in_route(state_, pending_[i], r, noise_);
            }
        }
    }

    std::size_t size() const { return pending_.size(); }
    std::size_t routes() const { return routes_; }
    PatientId patient(std::size_t i) const { return pending_[i]; }
    const InsertionMove& at(std::size_t i, std::size_t r) const { return moves_[i * routes_ + r]; }

    /// Drops row i and refreshes the column of the route that changed.
    void committed(std::size_t i, std::size_t r) {
        pending_.erase(pending_.begin() + static_cast<std::ptrdiff_t>(i));
        moves_.erase(moves_.begin() + static_cast<std::ptrdiff_t>(i * routes_),
                     moves_.begin() + static_cast<std::ptrdiff_t>((i + 1) * routes_));
        for (std::size_t j = 0; j < pending_.size(); ++j) {
            slot(j, r) = best_insertion_in_route(state_, pending_[j], r, noise_);
        }
    }

private:
    InsertionMove& slot(std::size_t i, std::size_t r) { return moves_[i * routes_ + r]; }

    const SearchState& state_;
    NoiseSource& noise_;
    std::vector<PatientId> pending_;
    std::size_t routes_;
    std::vector<InsertionMove> moves_;
};

void commit(SearchState& state, PatientId patient, const InsertionMove& move) {
    state.insert(patient, move.route, move.slot, move.lunch);
}

} // namespace

std::size_t greedy_insertion(SearchState& state, NoiseSource& noise) {
    MoveTable table(state, noise);
    std::size_t inserted = 0;
    for (;;) {
        const InsertionMove* best = nullptr;
        std::size_t best_row = 0;
        for (std::size_t i = 0; i < table.size(); ++i) {
            for (std::size_t r = 0; r < table.routes(); ++r) {
                const InsertionMove& m = table.at(i, r);
                // rows are in id order, routes and slots ascend: strict < keeps the first on ties
                if (m.feasible && (best == nullptr || m.score < best->score)) {
                    best = &m;
                    best_row = i;
                }
            }
        }
        if (best == nullptr) {
            break;
        }
        const InsertionMove move = *best;
        commit(state, table.patient(best_row), move);
        table.committed(best_row, move.route);
        ++inserted;
    }
    return inserted;
}

std::size_t regret_insertion(SearchState& state, int k, NoiseSource& noise) {
    MoveTable table(state, noise);
    std::size_t inserted = 0;
    std::vector<double> scores;
    for (;;) {
        bool found = false;
        std::size_t best_row = 0;
        std::size_t best_route = 0;
        std::size_t best_count = 0;
        double best_regret = 0.0;
        double best_score = 0.0;

        for (std::size_t i = 0; i < table.size(); ++i) {
            scores.clear();
            std::size_t cheapest = 0;
            for (std::size_t r = 0; r < table.routes(); ++r) {
                const InsertionMove& m = table.at(i, r);
                if (!m.feasible) {
                    continue;
                }
                if (scores.empty() || m.score < table.at(i, cheapest).score) {
                    cheapest = r;
                }
                scores.push_back(m.score);
            }
            if (scores.empty()) {
                continue;
            }
            const std::size_t count = scores.size();
            const std::size_t h = std::min<std::size_t>(count, static_cast<std::size_t>(k));
            std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(h), scores.end());
            double regret = 0.0;
            for (std::size_t j = 1; j < h; ++j) {
                regret += scores[j] - scores[0];
            }
            const bool constrained = count < static_cast<std::size_t>(k);
            bool better = false;
            if (!found) {
                better = true;
            } else {
                const bool best_constrained = best_count < static_cast<std::size_t>(k);
                if (constrained != best_constrained) {
                    better = constrained;
                } else if (constrained && count != best_count) {
                    better = count < best_count;
                } else if (regret != best_regret) {
                    better = regret > best_regret;
                } else {
                    better = scores[0] < best_score; // equal: lower id already holds
                }
            }
            if (better) {
                found = true;
                best_row = i;
                best_route = cheapest;
                best_count = count;
                best_regret = regret;
                best_score = scores[0];
            }
        }
        if (!found) {
            break;
        }
        const InsertionMove move = table.at(best_row, best_route);
        commit(state, table.patient(best_row), move);
        table.committed(best_row, move.route);
        ++inserted;
    }
    return inserted;
}

std::size_t apply_insertion(SearchState& state, InsertionKind kind, double noise_amplitude, Rng& rng) {
    NoiseSource quiet;
    NoiseSource noisy(noise_amplitude, rng);
    switch (kind) {
    case InsertionKind::greedy:
        return greedy_insertion(state, quiet);
    case InsertionKind::greedy_noise:
        return greedy_insertion(state, noisy);
    case InsertionKind::regret2:
        return regret_insertion(state, 2, quiet);
    case InsertionKind::regret2_noise:
        return regret_insertion(state, 2, noisy);
    case InsertionKind::regret3:
        return regret_insertion(state, 3, quiet);
    case InsertionKind::regret3_noise:
        return regret_insertion(state, 3, noisy);
    }
    return 0;
}

} // namespace hhsrp::alns
