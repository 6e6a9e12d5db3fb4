#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hhsrp/oracle/oracle.hpp"

namespace hhsrp::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-6;

struct Label {
    double time;
    double cost;
};

/// Adds `l` unless dominated; drops labels it dominates.
void add_label(std::vector<Label>& bucket, Label l) {
    for (const Label& o : bucket) {
        if (o.time <= l.time && o.cost <= l.cost) {
            return;
        }
    }
    bucket.erase(std::remove_if(bucket.begin(), bucket.end(),
                                [&l](const Label& o) { return l.time <= o.time && l.cost <= o.cost; }),
                 bucket.end());
    bucket.push_back(l);
}

/// Earliest start of a break begun at `t`, or -1 when the window has closed.
double break_end(double t, const BreakPolicy& b) {
    const double s = std::max(t, b.window_open);
    return s > b.window_close + kEps ? -1.0 : s + b.duration;
}

/// Cheapest feasible route per visited subset for caregiver k.
std::vector<double> route_costs(const ProblemInstance& in, CaregiverId k) {
    const int n = in.patient_count();
    const unsigned subsets = 1u << n;
    const BreakPolicy& b = in.break_policy();
    const double limit = in.caregiver(k).max_working_time;
    const SquareMatrix& tt = in.travel_time_matrix();
    const SquareMatrix& tc = in.travel_cost_matrix();

    // labels[(mask * (n + 1) + last) * 2 + taken]
    std::vector<std::vector<Label>> labels(static_cast<std::size_t>(subsets) * (n + 1) * 2);
    auto at = [n](unsigned mask, int last, int taken) {
        return (static_cast<std::size_t>(mask) * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(last)) * 2 +
               static_cast<std::size_t>(taken);
    };
    labels[at(0, 0, 0)].push_back({0.0, 0.0});

    std::vector<double> best(subsets, kInf);
    for (unsigned mask = 0; mask < subsets; ++mask) {
        for (int last = 0; last <= n; ++last) {
            for (int taken = 0; taken < 2; ++taken) {
                const std::vector<Label> bucket = labels[at(mask, last, taken)];
                for (const Label& l : bucket) {
                    // close the route
                    double back = l.time + tt(static_cast<std::size_t>(last), 0);
                    if (!taken) {
                        back = break_end(back, b);
                    }
                    if (back >= 0.0 && back <= limit + kEps) {
                        best[mask] = std::min(best[mask], l.cost + tc(static_cast<std::size_t>(last), 0));
                    }
                    // extend
                    for (int j = 1; j <= n; ++j) {
                        if ((mask >> (j - 1)) & 1u || !in.eligible(k, j)) {
                            continue;
                        }
                        const Patient& p = in.patient(j);
                        const double arrive = l.time + tt(static_cast<std::size_t>(last), static_cast<std::size_t>(j));
                        const double cost = l.cost + tc(static_cast<std::size_t>(last), static_cast<std::size_t>(j));
                        const unsigned next = mask | (1u << (j - 1));
                        auto serve = [&](double t) {
                            const double s = std::max(t, p.tw_open);
                            return s > p.tw_close + kEps ? -1.0 : s + p.service_duration;
                        };
                        // no break here
                        if (const double done = serve(arrive); done >= 0.0) {
                            add_label(labels[at(next, j, taken)], {done, cost});
                            if (!taken) {
                                if (const double after = break_end(done, b); after >= 0.0) {
                                    add_label(labels[at(next, j, 1)], {after, cost});
                                }
                            }
                        }
                        if (!taken) {
                            if (const double rested = break_end(arrive, b); rested >= 0.0) {
                                if (const double done = serve(rested); done >= 0.0) {
                                    add_label(labels[at(next, j, 1)], {done, cost});
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return best;
}

} // namespace

double dp_optimum(const ProblemInstance& instance, OracleLimits limits) {
    if (instance.patient_count() > limits.max_patients || instance.caregiver_count() > limits.max_caregivers) {
        throw OracleRefusal("instance too large for the DP oracle");
    }
    const int n = instance.patient_count();
    const unsigned subsets = 1u << n;
    std::vector<double> merged(subsets, kInf);
    merged[0] = 0.0;
    for (int k = 1; k <= instance.caregiver_count(); ++k) {
        const std::vector<double> route = route_costs(instance, k);
        std::vector<double> next(subsets, kInf);
        for (unsigned mask = 0; mask < subsets; ++mask) {
            // every submask, including the empty route
            for (unsigned sub = mask;; sub = (sub - 1) & mask) {
                const double v = merged[mask ^ sub] + route[sub];
                next[mask] = std::min(next[mask], v);
                if (sub == 0) {
                    break;
                }
            }
        }
        merged = std::move(next);
    }
    double best = kInf;
    for (unsigned mask = 0; mask < subsets; ++mask) {
        double penalty = 0.0;
        for (int p = 1; p <= n; ++p) {
            if (!((mask >> (p - 1)) & 1u)) {
                penalty += instance.patient(p).penalty;
            }
        }
        best = std::min(best, merged[mask] + penalty);
    }
    return best;
}

ProblemInstance tiny_instance(std::uint64_t seed) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (seed * 0xbf58476d1ce4e5b9ULL));
    const int n = 4 + static_cast<int>(seed % 3);
    const int m = 2;
    std::uniform_real_distribution<double> coord(0.0, 40.0);
    std::uniform_int_distribution<int> open(0, 320);
    std::uniform_int_distribution<int> width(15, 90);
    std::uniform_int_distribution<int> service(20, 60);
    std::bernoulli_distribution allowed(0.8);

    std::vector<Point> pts{{20.0, 20.0}};
    std::vector<Patient> patients;
    for (int i = 1; i <= n; ++i) {
        const Point at{std::round(coord(rng)), std::round(coord(rng))};
        pts.push_back(at);
        const double a = open(rng);
        patients.push_back(Patient{i, static_cast<double>(service(rng)), a, a + width(rng), 200.0, at});
    }
    std::vector<Caregiver> caregivers;
    for (int k = 1; k <= m; ++k) {
        caregivers.push_back(Caregiver{k, 400.0, {}});
    }
    for (int i = 1; i <= n; ++i) {
        bool any = false;
        for (auto& c : caregivers) {
            if (allowed(rng)) {
                c.eligible_patients.push_back(i);
                any = true;
            }
        }
        if (!any) {
            caregivers[static_cast<std::size_t>(i % m)].eligible_patients.push_back(i);
        }
    }
    for (auto& c : caregivers) {
        std::sort(c.eligible_patients.begin(), c.eligible_patients.end());
    }
    return ProblemInstance("tiny" + std::to_string(seed), std::move(patients), std::move(caregivers),
                           BreakPolicy{30.0, 150.0, 240.0}, euclidean_matrix(pts, DistanceConvention::euclidean_round_int),
                           std::nullopt, DistanceConvention::euclidean_round_int, pts[0]);
}

} // namespace hhsrp::oracle
