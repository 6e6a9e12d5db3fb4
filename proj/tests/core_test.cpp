#include <gtest/gtest.h>

#include <functional>

#include "hhsrp/core/model.hpp"
#include "hhsrp/core/schedule.hpp"
#include "hhsrp/core/validate.hpp"
#include "support.hpp"

using namespace hhsrp;
using hhsrp::test::make_instance;
using hhsrp::test::patient;
using hhsrp::test::symmetric;

namespace {

// one patient 10 minutes from the depot
ProblemInstance single(double a, double b, double d, BreakPolicy lunch, double shift = 600) {
    return make_instance({patient(1, d, a, b)}, {{1, shift, {1}}}, lunch, symmetric(2, {10}));
}

} // namespace

TEST(EvaluateRoute, EmptyRouteTakesBreakAtDepot) {
    const ProblemInstance in = single(0, 100, 5, BreakPolicy{60, 120, 300});
    const ScheduleTimeline tl = evaluate_route(RoutePlan{1, {}, BreakPlacement::at_depot(0)}, in);
    EXPECT_TRUE(tl.feasible);
    EXPECT_DOUBLE_EQ(tl.break_start, 120);
    EXPECT_DOUBLE_EQ(tl.depot_return, 180);
}

TEST(EvaluateRoute, BreakBeforeServiceOnArrival) {
    const ProblemInstance in = single(30, 100, 20, BreakPolicy{15, 0, 100});
    const ScheduleTimeline tl = evaluate_route(RoutePlan{1, {1}, {0, BreakTiming::before_service}}, in);
    ASSERT_TRUE(tl.feasible);
    EXPECT_DOUBLE_EQ(tl.break_start, 10);
    EXPECT_DOUBLE_EQ(tl.service_start[0], 30);
    EXPECT_DOUBLE_EQ(tl.depot_return, 60); // departs at 50
}

TEST(EvaluateRoute, LateArrivalIsTimeWindowViolation) {
    const ProblemInstance in = single(0, 5, 20, BreakPolicy{15, 0, 500});
    const ScheduleTimeline tl = evaluate_route(RoutePlan{1, {1}, BreakPlacement::at_depot(1)}, in);
    EXPECT_FALSE(tl.feasible);
    EXPECT_EQ(tl.violation, Infeasibility::time_window);
    EXPECT_EQ(tl.violation_index, 0u);
}

TEST(EvaluateRoute, BreakAfterServiceDelaysDeparture) {
    const ProblemInstance in = single(0, 100, 20, BreakPolicy{30, 50, 100});
    const ScheduleTimeline tl = evaluate_route(RoutePlan{1, {1}, {0, BreakTiming::after_service}}, in);
    ASSERT_TRUE(tl.feasible);
    EXPECT_DOUBLE_EQ(tl.service_start[0], 10);
    EXPECT_DOUBLE_EQ(tl.break_start, 50);
    EXPECT_DOUBLE_EQ(tl.depot_return, 90);
}

TEST(EvaluateRoute, BreakWindowAndShiftViolations) {
    const ProblemInstance late_break = single(0, 100, 20, BreakPolicy{30, 0, 25});
    const ScheduleTimeline a = evaluate_route(RoutePlan{1, {1}, BreakPlacement::at_depot(1)}, late_break);
    EXPECT_EQ(a.violation, Infeasibility::break_window);

    const ProblemInstance short_shift = single(0, 100, 20, BreakPolicy{30, 0, 100}, 60);
    const ScheduleTimeline b = evaluate_route(RoutePlan{1, {1}, {0, BreakTiming::after_service}}, short_shift);
    EXPECT_EQ(b.violation, Infeasibility::working_time); // home at 70
    EXPECT_EQ(b.violation_index, 1u);
}

TEST(EvaluateRoute, EpsilonToleratesRoundingAtWindowClose) {
    const ProblemInstance in = single(0, 10 - 5e-7, 20, BreakPolicy{0, 0, 500});
    EXPECT_TRUE(evaluate_route(RoutePlan{1, {1}, BreakPlacement::at_depot(1)}, in).feasible);
}

TEST(EvaluateRoute, StructuralErrorsThrow) {
    const ProblemInstance in = single(0, 100, 20, BreakPolicy{30, 0, 100});
    EXPECT_THROW(evaluate_route(RoutePlan{1, {2}, BreakPlacement::at_depot(1)}, in), ModelError);
    EXPECT_THROW(evaluate_route(RoutePlan{3, {1}, BreakPlacement::at_depot(1)}, in), ModelError);
    EXPECT_THROW(evaluate_route(RoutePlan{1, {1}, {5, BreakTiming::before_service}}, in), ModelError);
}

TEST(EvaluateRoute, IsDeterministic) {
    const ProblemInstance in = test::random_instance(3, 6, 2);
    const RoutePlan r{1, {1, 2, 3}, {1, BreakTiming::after_service}};
    const ScheduleTimeline a = evaluate_route(r, in);
    const ScheduleTimeline b = evaluate_route(r, in);
    EXPECT_EQ(a.feasible, b.feasible);
    EXPECT_EQ(a.depot_return, b.depot_return);
    EXPECT_EQ(a.service_start, b.service_start);
}

// Earliest start is dominant: on integer data, no schedule that waits extra
// minutes anywhere (1-minute grid) is feasible when the earliest one is not.
TEST(EvaluateRoute, EarliestStartDominatesDelayedSchedules) {
    int infeasible_seen = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        std::mt19937_64 rng(seed);
        auto uni = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
        const int n = 3;
        std::vector<Patient> ps;
        for (int i = 1; i <= n; ++i) {
            const int a = uni(0, 60);
            ps.push_back(patient(i, uni(5, 20), a, a + uni(0, 30)));
        }
        std::vector<double> upper;
        for (int k = 0; k < 6; ++k) {
            upper.push_back(uni(3, 15));
        }
        const BreakPolicy lunch{static_cast<double>(uni(5, 20)), static_cast<double>(uni(10, 40)),
                                static_cast<double>(uni(40, 90))};
        const ProblemInstance in = make_instance(ps, {{1, 150, {1, 2, 3}}}, lunch, symmetric(4, upper));
        const std::vector<PatientId> visits{1, 2, 3};
        for (const BreakPlacement& bp : all_break_placements(visits.size())) {
            const bool earliest = evaluate_route(RoutePlan{1, visits, bp}, in).feasible;
            // event list: services and the break in route order; each may start any grid minute past its earliest
            std::function<bool(std::size_t, double, int, bool)> any = [&](std::size_t i, double t, int node,
                                                                          bool taken) -> bool {
                const bool break_here_before = !taken && bp.position == i && bp.timing == BreakTiming::before_service;
                if (i == visits.size()) {
                    t += in.travel_time(node, 0);
                    if (!taken) {
                        for (double s = std::max(t, lunch.window_open); s <= lunch.window_close; s += 1) {
                            if (s + lunch.duration <= 150) {
                                return true;
                            }
                        }
                        return false;
                    }
                    return t <= 150;
                }
                const Patient& p = in.patient(visits[i]);
                const double arrive = t + in.travel_time(node, p.id);
                if (break_here_before) {
                    for (double s = std::max(arrive, lunch.window_open); s <= lunch.window_close; s += 1) {
                        for (double v = std::max(s + lunch.duration, p.tw_open); v <= p.tw_close; v += 1) {
                            if (any(i + 1, v + p.service_duration, p.id, true)) {
                                return true;
                            }
                        }
                    }
                    return false;
                }
                for (double v = std::max(arrive, p.tw_open); v <= p.tw_close; v += 1) {
                    const double done = v + p.service_duration;
                    if (!taken && bp.position == i) {
                        for (double s = std::max(done, lunch.window_open); s <= lunch.window_close; s += 1) {
                            if (any(i + 1, s + lunch.duration, p.id, true)) {
                                return true;
                            }
                        }
                    } else if (any(i + 1, done, p.id, taken)) {
                        return true;
                    }
                }
                return false;
            };
            const bool delayed = any(0, 0.0, 0, false);
            EXPECT_EQ(earliest, delayed) << "seed " << seed << " position " << bp.position;
            infeasible_seen += earliest ? 0 : 1;
        }
    }
    EXPECT_GT(infeasible_seen, 0);
}

TEST(Instance, DepotCopyFoldsOntoDepot) {
    const ProblemInstance in = test::random_instance(5, 4, 1);
    for (int i = 0; i <= 4; ++i) {
        EXPECT_EQ(in.travel_time(i, 5), in.travel_time(i, 0));
        EXPECT_EQ(in.travel_cost(5, i), in.travel_cost(0, i));
    }
    EXPECT_EQ(in.travel_time(0, 5), 0.0);
}

TEST(Instance, CostMatrixDefaultsToTime) {
    const ProblemInstance in = test::random_instance(5, 4, 1);
    EXPECT_FALSE(in.has_distinct_cost_matrix());
    EXPECT_EQ(in.travel_cost_matrix(), in.travel_time_matrix());
}

TEST(Instance, RejectsBrokenInvariants) {
    const BreakPolicy lunch{30, 100, 200};
    const SquareMatrix t = symmetric(2, {10});
    EXPECT_THROW(make_instance({patient(1, 10, 50, 40)}, {{1, 400, {1}}}, lunch, t), ModelError);
    EXPECT_THROW(make_instance({patient(1, -1, 0, 40)}, {{1, 400, {1}}}, lunch, t), ModelError);
    EXPECT_THROW(make_instance({patient(1, 10, 0, 40, -5)}, {{1, 400, {1}}}, lunch, t), ModelError);
    EXPECT_THROW(make_instance({patient(1, 10, 0, 40)}, {{1, 0, {1}}}, lunch, t), ModelError);
    EXPECT_THROW(make_instance({patient(1, 10, 0, 40)}, {{1, 400, {2}}}, lunch, t), ModelError);
    EXPECT_THROW(make_instance({patient(1, 10, 0, 40)}, {{1, 400, {1}}}, BreakPolicy{30, 200, 100}, t), ModelError);
    EXPECT_THROW(make_instance({patient(1, 10, 0, 40)}, {{1, 400, {1}}}, lunch, SquareMatrix(3)), ModelError);
    SquareMatrix diag = t;
    diag(1, 1) = 2;
    EXPECT_THROW(make_instance({patient(1, 10, 0, 40)}, {{1, 400, {1}}}, lunch, diag), ModelError);
    SquareMatrix neg = t;
    neg(0, 1) = -1;
    EXPECT_THROW(make_instance({patient(1, 10, 0, 40)}, {{1, 400, {1}}}, lunch, neg), ModelError);
}

TEST(Instance, BreakPlacementsCount) {
    for (std::size_t len = 0; len < 6; ++len) {
        const auto all = all_break_placements(len);
        EXPECT_EQ(all.size(), 2 * len + 1);
        EXPECT_EQ(all.back(), BreakPlacement::at_depot(len));
    }
}

TEST(SolutionCost, AllBankedIsSumOfPenalties) {
    std::vector<Patient> ps;
    for (int i = 1; i <= 30; ++i) {
        ps.push_back(patient(i, 10, 0, 500));
    }
    const SquareMatrix t(31, 0.0);
    SquareMatrix tt(31);
    for (std::size_t i = 0; i < 31; ++i) {
        for (std::size_t j = 0; j < 31; ++j) {
            tt(i, j) = i == j ? 0 : 7;
        }
    }
    const ProblemInstance in =
        make_instance(ps, {{1, 600, test::all_patients(30)}, {2, 600, test::all_patients(30)}}, {30, 100, 200}, tt);
    const CostBreakdown c = solution_cost(Solution::all_banked(in), in);
    EXPECT_DOUBLE_EQ(c.travel_cost, 0);
    EXPECT_DOUBLE_EQ(c.penalty_cost, 30000);
    EXPECT_DOUBLE_EQ(c.total, 30000);
}

TEST(SolutionCost, SumsArcsAndIgnoresRouteOrder) {
    const ProblemInstance in = test::validator_instance();
    const Solution s = test::validator_fixtures().front().repaired;
    const CostBreakdown c = solution_cost(s, in);
    EXPECT_DOUBLE_EQ(c.travel_cost, (10 + 5 + 5 + 10) + (10 + 10));
    EXPECT_EQ(c.total, c.travel_cost + c.penalty_cost);
    Solution swapped = s;
    std::swap(swapped.routes[0], swapped.routes[1]);
    EXPECT_EQ(solution_cost(swapped, in).total, c.total);
}

TEST(SolutionCost, UsesDistinctCostMatrix) {
    SquareMatrix cost = symmetric(2, {3});
    const ProblemInstance in("c", {patient(1, 10, 0, 100, 50)}, {{1, 400, {1}}}, BreakPolicy{30, 0, 300},
                             symmetric(2, {10}), cost, DistanceConvention::explicit_matrix);
    const Solution s{{{1, {1}, BreakPlacement::at_depot(1)}}, {}};
    EXPECT_DOUBLE_EQ(solution_cost(s, in).travel_cost, 6);
}

TEST(InsertionDelta, EmptyRouteIsRoundTrip) {
    const ProblemInstance in = test::random_instance(11, 5, 2, 600);
    const RoutePlan empty{1, {}, BreakPlacement::at_depot(0)};
    for (PatientId p = 1; p <= 5; ++p) {
        const InsertionEvaluation e = insertion_delta(empty, p, 0, in);
        EXPECT_DOUBLE_EQ(e.cost_delta, in.travel_cost(0, p) + in.travel_cost(p, 0));
    }
}

TEST(InsertionDelta, UnreachableWindowIsInfeasibleEverywhere) {
    std::vector<Patient> ps{patient(1, 10, 0, 300), patient(2, 10, 0, 300), patient(3, 10, 0, 5)};
    const ProblemInstance in =
        make_instance(ps, {{1, 600, {1, 2, 3}}}, {30, 100, 300}, symmetric(4, {10, 10, 10, 5, 5, 5}));
    const RoutePlan r{1, {1, 2}, BreakPlacement::at_depot(2)};
    for (std::size_t slot = 0; slot <= 2; ++slot) {
        EXPECT_FALSE(insertion_delta(r, 3, slot, in).feasible);
    }
}

TEST(InsertionDelta, MatchesReevaluationOnThreePatientRoutes) {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const ProblemInstance in = test::random_instance(seed, 5, 1, 900);
        RoutePlan r{1, {1, 2, 3}, BreakPlacement::at_depot(3)};
        std::sort(r.visits.begin(), r.visits.end(),
                  [&in](PatientId a, PatientId b) { return in.patient(a).tw_open < in.patient(b).tw_open; });
        for (const PatientId p : {4, 5}) {
            if (!in.eligible(1, p)) {
                continue;
            }
            for (std::size_t slot = 0; slot <= 3; ++slot) {
                const InsertionEvaluation e = insertion_delta(r, p, slot, in);
                RoutePlan next = r;
                next.visits.insert(next.visits.begin() + static_cast<std::ptrdiff_t>(slot), p);
                EXPECT_NEAR(e.cost_delta, route_travel_cost(next.visits, in) - route_travel_cost(r.visits, in), 1e-9);
                if (e.feasible) {
                    next.lunch = e.best_break;
                    const ScheduleTimeline tl = evaluate_route(next, in);
                    EXPECT_TRUE(tl.feasible);
                    EXPECT_NEAR(tl.depot_return, e.depot_return, 1e-9);
                    ++checked;
                }
                // the three candidates only
                for (const BreakPlacement& c : {shifted_for_insertion(r.lunch, slot),
                                                BreakPlacement{slot, BreakTiming::before_service},
                                                BreakPlacement{slot, BreakTiming::after_service}}) {
                    next.lunch = c;
                    const ScheduleTimeline tl = evaluate_route(next, in);
                    if (tl.feasible) {
                        EXPECT_TRUE(e.feasible);
                        EXPECT_LE(e.depot_return, tl.depot_return + 1e-9);
                    }
                }
            }
        }
    }
    EXPECT_GT(checked, 20);
}

TEST(InsertionDelta, ShiftKeepsBreakOnItsNode) {
    EXPECT_EQ(shifted_for_insertion({2, BreakTiming::after_service}, 1), (BreakPlacement{3, BreakTiming::after_service}));
    EXPECT_EQ(shifted_for_insertion({2, BreakTiming::after_service}, 3), (BreakPlacement{2, BreakTiming::after_service}));
    EXPECT_EQ(shifted_for_insertion(BreakPlacement::at_depot(2), 2), BreakPlacement::at_depot(3));
}

TEST(Validator, FixturesReportTheirCode) {
    const ProblemInstance in = test::validator_instance();
    for (const auto& f : test::validator_fixtures()) {
        const ValidationReport broken = validate_solution(f.broken, in);
        EXPECT_TRUE(broken.has(f.expected)) << f.label << ": " << broken.summary();
        for (const Violation& v : broken.violations) {
            EXPECT_EQ(v.code, f.expected) << f.label << ": " << broken.summary();
        }
        const ValidationReport fixed = validate_solution(f.repaired, in);
        EXPECT_TRUE(fixed.ok()) << f.label << ": " << fixed.summary();
    }
}

TEST(Validator, DuplicateVisitAndEligibility) {
    const ProblemInstance in = test::validator_instance();
    const auto fx = test::validator_fixtures();
    const ValidationReport d = validate_solution(fx[0].broken, in);
    ASSERT_EQ(d.violations.size(), 1u);
    EXPECT_EQ(d.violations[0].code, ViolationCode::duplicate_visit);
    const ValidationReport e = validate_solution(fx.back().broken, in);
    ASSERT_EQ(e.violations.size(), 1u);
    EXPECT_EQ(e.violations[0].code, ViolationCode::eligibility);
    EXPECT_EQ(e.violations[0].patient, 4);
}

TEST(Validator, AllBankedIsValid) {
    const ProblemInstance in = test::validator_instance();
    EXPECT_TRUE(validate_solution(Solution::all_banked(in), in).ok());
}
