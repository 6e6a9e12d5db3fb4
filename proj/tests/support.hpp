#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hhsrp/core/model.hpp"
#include "hhsrp/core/schedule.hpp"
#include "hhsrp/core/validate.hpp"

namespace hhsrp::test {

inline std::vector<PatientId> all_patients(int n) {
    std::vector<PatientId> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return v;
}

inline Patient patient(PatientId id, double d, double a, double b, double penalty = 1000.0) {
    return Patient{id, d, a, b, penalty, std::nullopt};
}

/// Symmetric matrix from the upper triangle given row by row (i < j).
inline SquareMatrix symmetric(std::size_t size, const std::vector<double>& upper) {
    SquareMatrix m(size);
    std::size_t k = 0;
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = i + 1; j < size; ++j) {
            m(i, j) = m(j, i) = upper.at(k++);
        }
    }
    return m;
}

inline ProblemInstance make_instance(std::vector<Patient> patients,
                                     std::vector<Caregiver> caregivers,
                                     BreakPolicy lunch,
                                     SquareMatrix time,
                                     std::string name = "t") {
    return ProblemInstance(std::move(name), std::move(patients), std::move(caregivers), lunch, std::move(time),
                           std::nullopt, DistanceConvention::explicit_matrix);
}

/// Random instance with integer data, every caregiver eligible for a random subset.
inline ProblemInstance random_instance(std::uint64_t seed, int n, int m, double horizon = 480.0) {
    std::mt19937_64 rng(seed);
    auto uni = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::vector<Point> pts;
    for (int i = 0; i <= n; ++i) {
        pts.push_back({static_cast<double>(uni(0, 50)), static_cast<double>(uni(0, 50))});
    }
    std::vector<Patient> ps;
    for (int i = 1; i <= n; ++i) {
        const double a = uni(0, static_cast<int>(horizon) - 120);
        ps.push_back(Patient{i, static_cast<double>(uni(10, 40)), a, a + uni(20, 120), 500.0, pts[i]});
    }
    std::vector<Caregiver> cs;
    for (int k = 1; k <= m; ++k) {
        Caregiver c{k, horizon, {}};
        for (int i = 1; i <= n; ++i) {
            if (uni(0, 9) < 8) {
                c.eligible_patients.push_back(i);
            }
        }
        cs.push_back(c);
    }
    return ProblemInstance("rand" + std::to_string(seed), ps, cs, BreakPolicy{30, 150, 260},
                           euclidean_matrix(pts, DistanceConvention::euclidean_exact), std::nullopt,
                           DistanceConvention::euclidean_exact, pts[0]);
}

/// Same instance with patient i renamed perm[i - 1].
inline ProblemInstance relabel(const ProblemInstance& in, const std::vector<PatientId>& perm) {
    const int n = in.patient_count();
    std::vector<Patient> ps(static_cast<std::size_t>(n));
    for (const Patient& p : in.patients()) {
        Patient q = p;
        q.id = perm[static_cast<std::size_t>(p.id - 1)];
        ps[static_cast<std::size_t>(q.id - 1)] = q;
    }
    auto node = [&perm](int i) { return i == 0 ? 0 : perm[static_cast<std::size_t>(i - 1)]; };
    SquareMatrix t(static_cast<std::size_t>(n) + 1);
    SquareMatrix c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            t(static_cast<std::size_t>(node(i)), static_cast<std::size_t>(node(j))) = in.travel_time(i, j);
            c(static_cast<std::size_t>(node(i)), static_cast<std::size_t>(node(j))) = in.travel_cost(i, j);
        }
    }
    std::vector<Caregiver> cs = in.caregivers();
    for (Caregiver& k : cs) {
        for (PatientId& p : k.eligible_patients) {
            p = node(p);
        }
        std::sort(k.eligible_patients.begin(), k.eligible_patients.end());
    }
    return ProblemInstance(in.name() + "_relabel", ps, cs, in.break_policy(), t, c, DistanceConvention::explicit_matrix);
}

/// A feasible solution and a way to break it, one per validator code.
struct ValidatorFixture {
    std::string label;
    ViolationCode expected;
    Solution broken;
    Solution repaired;
};

/// Instance for the validator fixtures: 4 patients, 2 caregivers, caregiver 2
/// may not serve patient 4 and works at most 200 minutes.
inline ProblemInstance validator_instance() {
    std::vector<Patient> ps{patient(1, 10, 0, 200), patient(2, 10, 0, 200), patient(3, 10, 175, 200),
                            patient(4, 10, 100, 120)};
    std::vector<Caregiver> cs{{1, 400, {1, 2, 3, 4}}, {2, 200, {1, 2, 3}}};
    SquareMatrix t = symmetric(5, {10, 10, 10, 10, 5, 5, 5, 5, 5, 5});
    return make_instance(ps, cs, BreakPolicy{30, 60, 180}, t, "validator");
}

inline std::vector<ValidatorFixture> validator_fixtures() {
    using BT = BreakTiming;
    const RoutePlan empty2{2, {}, {0, BT::before_service}};
    // caregiver 1: 1 (10-20), 2 (25-35), break 60-90, 4 (100-110), home 120
    // caregiver 2: break 60-90, 3 (175-185), home 195
    const RoutePlan r1{1, {1, 2, 4}, {1, BT::after_service}};
    const RoutePlan r2{2, {3}, {0, BT::before_service}};
    const Solution base{{r1, r2}, {}};
    std::vector<ValidatorFixture> f;
    auto add = [&f](std::string label, ViolationCode code, Solution broken, Solution repaired) {
        f.push_back({std::move(label), code, std::move(broken), std::move(repaired)});
    };

    // caregiver 2: break 60-90, 1 (90-100), 3 (175-185), home 195
    add("duplicate visit", ViolationCode::duplicate_visit, Solution{{r1, {2, {1, 3}, {0, BT::before_service}}}, {}},
        base);
    add("missing patient", ViolationCode::missing_patient, Solution{{r1, empty2}, {}}, Solution{{r1, empty2}, {3}});
    add("banked and routed", ViolationCode::banked_and_routed, Solution{{r1, r2}, {3}}, base);
    add("unknown patient", ViolationCode::unknown_patient, Solution{{r1, {2, {3, 9}, {0, BT::before_service}}}, {}},
        base);
    add("unknown caregiver", ViolationCode::unknown_caregiver,
        Solution{{r1, r2, {7, {}, {0, BT::before_service}}}, {}}, base);
    add("break count zero", ViolationCode::break_missing,
        Solution{{{1, {1, 2, 4, 3}, {1, BT::after_service}}}, {}},
        Solution{{{1, {1, 2, 4, 3}, {1, BT::after_service}}, empty2}, {}});
    add("break count two", ViolationCode::break_duplicated, Solution{{r1, r2, empty2}, {}}, base);
    add("break off route", ViolationCode::break_off_route, Solution{{{1, {1, 2, 4}, {7, BT::after_service}}, r2}, {}},
        base);
    // break before 1 pushes everything back: 3 waits until 175 and 4 is reached after 120
    add("time window", ViolationCode::time_window, Solution{{{1, {1, 2, 3, 4}, {0, BT::before_service}}, empty2}, {}},
        Solution{{{1, {1, 2, 4, 3}, {1, BT::after_service}}, empty2}, {}});
    // after serving 3 the break would start at 185
    add("break window", ViolationCode::break_window, Solution{{r1, {2, {3}, {0, BT::after_service}}}, {}}, base);
    // 3 then 2 brings caregiver 2 home at 210
    add("working time", ViolationCode::working_time,
        Solution{{{1, {1, 4}, {0, BT::after_service}}, {2, {3, 2}, {0, BT::before_service}}}, {}}, base);
    add("eligibility", ViolationCode::eligibility,
        Solution{{{1, {1, 2}, {1, BT::after_service}}, {2, {4, 3}, {0, BT::before_service}}}, {}}, base);
    return f;
}

} // namespace hhsrp::test
