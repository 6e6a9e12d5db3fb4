#include <algorithm>
#include <cmath>
#include <limits>

#include "hhsrp/core/schedule.hpp"
#include "hhsrp/oracle/oracle.hpp"

namespace hhsrp::oracle {

namespace {

struct SubsetBest {
    std::uint64_t count = 0;
    double cost = std::numeric_limits<double>::infinity();
    RoutePlan plan;
};

void check_limits(const ProblemInstance& instance, const OracleLimits& limits) {
    if (instance.patient_count() > limits.max_patients || instance.caregiver_count() > limits.max_caregivers) {
        throw OracleRefusal("instance '" + instance.name() + "' has " + std::to_string(instance.patient_count()) +
                            " patients and " + std::to_string(instance.caregiver_count()) +
                            " caregivers; exhaustive search is limited to " + std::to_string(limits.max_patients) +
                            " and " + std::to_string(limits.max_caregivers));
    }
}

SubsetBest enumerate_subset(const ProblemInstance& instance, CaregiverId k, unsigned mask) {
    SubsetBest best;
    best.plan.caregiver = k;
    std::vector<PatientId> order;
    for (int p = 1; p <= instance.patient_count(); ++p) {
        if (mask & (1u << (p - 1))) {
            if (!instance.eligible(k, p)) {
                return best;
            }
            order.push_back(p);
        }
    }
    do {
        const double travel = route_travel_cost(order, instance);
        for (const BreakPlacement& placement : all_break_placements(order.size())) {
            RoutePlan plan{k, order, placement};
            if (!evaluate_route(plan, instance).feasible) {
                continue;
            }
            ++best.count;
            if (travel < best.cost) {
                best.cost = travel;
                best.plan = std::move(plan);
            }
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

} // namespace

OracleResult brute_force_optimum(const ProblemInstance& instance, OracleLimits limits) {
    check_limits(instance, limits);
    const int n = instance.patient_count();
    const int m = instance.caregiver_count();
    const unsigned subsets = 1u << n;

    std::vector<std::vector<SubsetBest>> table(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k) {
        auto& row = table[static_cast<std::size_t>(k - 1)];
        row.reserve(subsets);
        for (unsigned mask = 0; mask < subsets; ++mask) {
            row.push_back(enumerate_subset(instance, k, mask));
        }
    }

    OracleResult result;
    std::vector<int> assign(static_cast<std::size_t>(n), 0); // 0 = bank
    std::vector<unsigned> masks(static_cast<std::size_t>(m));
    for (;;) {
        std::fill(masks.begin(), masks.end(), 0u);
        double penalty = 0.0;
        for (int i = 0; i < n; ++i) {
            const int a = assign[static_cast<std::size_t>(i)];
            if (a == 0) {
                penalty += instance.patient(i + 1).penalty;
            } else {
                masks[static_cast<std::size_t>(a - 1)] |= 1u << i;
            }
        }
        std::uint64_t combos = 1;
        double cost = penalty;
        for (int k = 0; k < m && combos; ++k) {
            const SubsetBest& s = table[static_cast<std::size_t>(k)][masks[static_cast<std::size_t>(k)]];
            combos *= s.count;
            cost += s.cost;
        }
        if (combos > 0) {
            result.feasible_count += combos;
            if (!result.feasible || cost < result.optimum_cost) {
                result.feasible = true;
                result.optimum_cost = cost;
                result.solution.routes.clear();
                result.solution.request_bank.clear();
                for (int k = 0; k < m; ++k) {
                    result.solution.routes.push_back(
                        table[static_cast<std::size_t>(k)][masks[static_cast<std::size_t>(k)]].plan);
                }
                for (int i = 0; i < n; ++i) {
                    if (assign[static_cast<std::size_t>(i)] == 0) {
                        result.solution.request_bank.push_back(i + 1);
                    }
                }
            }
        }
        // next assignment vector, last position fastest
        int i = n - 1;
        while (i >= 0 && assign[static_cast<std::size_t>(i)] == m) {
            assign[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) {
            break;
        }
        ++assign[static_cast<std::size_t>(i)];
    }
    if (result.feasible) {
        // report the objective exactly as the core model computes it
        result.optimum_cost = solution_cost(result.solution, instance).total;
    }
    return result;
}

CertifyReport certify(double engine_best, const OracleResult& oracle) {
    CertifyReport r;
    r.engine_cost = engine_best;
    r.oracle_cost = oracle.optimum_cost;
    r.gap = engine_best - oracle.optimum_cost;
    const double tol = 1e-6 * std::max(1.0, std::abs(oracle.optimum_cost));
    r.optimal = oracle.feasible && std::abs(r.gap) <= tol;
    r.engine_below_oracle = oracle.feasible && r.gap < -tol;
    r.gap_percent = oracle.optimum_cost != 0.0 ? 100.0 * r.gap / oracle.optimum_cost : (r.optimal ? 0.0 : 100.0);
    char buf[200];
    if (!oracle.feasible) {
        r.text = "oracle: instance has no feasible solution";
    } else {
        std::snprintf(buf, sizeof buf, "engine %.6f oracle %.6f gap %.6f (%.4f%%) %s", r.engine_cost, r.oracle_cost,
                      r.gap, r.gap_percent,
                      r.optimal ? "optimal" : r.engine_below_oracle ? "ENGINE BELOW ORACLE" : "suboptimal");
        r.text = buf;
    }
    return r;
}

} // namespace hhsrp::oracle
