#include "hhsrp/io/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hhsrp::io {

namespace {

constexpr double kShiftEnd = 540.0;
constexpr double kGammaShape = 16.0; // CV 0.25
constexpr std::array<double, 3> kMeanService{10.0, 15.0, 20.0};

int round_half_up(double x) {
    return static_cast<int>(std::floor(x + 0.5 + 1e-9));
}

} // namespace

TypeCounts service_type_counts(int patients) {
    if (patients < 0) {
        throw std::invalid_argument("patient count must be >= 0");
    }
    // tenths: 6, 3, 1
    const std::array<int, 3> share{6, 3, 1};
    std::array<int, 3> count{};
    std::array<int, 3> rest{};
    int assigned = 0;
    for (int t = 0; t < 3; ++t) {
        count[t] = patients * share[t] / 10;
        rest[t] = patients * share[t] % 10;
        assigned += count[t];
    }
    std::array<int, 3> order{1, 2, 0};
    std::stable_sort(order.begin(), order.end(), [&rest](int a, int b) { return rest[a] > rest[b]; });
    for (int i = 0; assigned < patients; ++i, ++assigned) {
        ++count[order[i]];
    }
    return {count[0], count[1], count[2]};
}

TypeCounts caregiver_capabilities(int caregivers) {
    return {caregivers, round_half_up(0.5 * caregivers), round_half_up(0.2 * caregivers)};
}

int default_caregiver_count(int patients) {
    return std::max(1, (patients + 19) / 20);
}

GeneratedInstance generate_covid_like(const CovidParams& params) {
    const int n = params.patients;
    if (n < 1) {
        throw std::invalid_argument("generator needs at least one patient");
    }
    const int m = params.caregivers ? *params.caregivers : default_caregiver_count(n);
    if (m < 1) {
        throw std::invalid_argument("generator needs at least one caregiver");
    }
    if (!(params.speed_kmh > 0.0)) {
        throw std::invalid_argument("travel speed must be positive");
    }
    if (!params.points && !(params.box_max_x > params.box_min_x && params.box_max_y > params.box_min_y)) {
        throw std::invalid_argument("bounding box is degenerate");
    }
    if (params.points && params.points->size() < static_cast<std::size_t>(n) + 1) {
        throw std::invalid_argument("point list needs a depot and " + std::to_string(n) + " patient locations");
    }

    std::mt19937_64 rng(params.seed);

    const TypeCounts types = service_type_counts(n);
    std::vector<int> patient_type;
    patient_type.insert(patient_type.end(), static_cast<std::size_t>(types.type1), 1);
    patient_type.insert(patient_type.end(), static_cast<std::size_t>(types.type2), 2);
    patient_type.insert(patient_type.end(), static_cast<std::size_t>(types.type3), 3);
    std::shuffle(patient_type.begin(), patient_type.end(), rng);

    std::vector<double> duration(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double mean = kMeanService[static_cast<std::size_t>(patient_type[static_cast<std::size_t>(i)] - 1)];
        std::gamma_distribution<double> gamma(kGammaShape, mean / kGammaShape);
        double d = gamma(rng);
        while (d < 1.0) {
            d = gamma(rng);
        }
        duration[static_cast<std::size_t>(i)] = d;
    }

    std::vector<Point> pts;
    if (params.points) {
        pts.assign(params.points->begin(), params.points->begin() + n + 1);
    } else {
        pts.push_back({(params.box_min_x + params.box_max_x) / 2.0, (params.box_min_y + params.box_max_y) / 2.0});
        std::uniform_real_distribution<double> ux(params.box_min_x, params.box_max_x);
        std::uniform_real_distribution<double> uy(params.box_min_y, params.box_max_y);
        for (int i = 0; i < n; ++i) {
            const double x = ux(rng);
            pts.push_back({x, uy(rng)});
        }
    }
    SquareMatrix minutes = euclidean_matrix(pts, DistanceConvention::euclidean_exact);
    for (std::size_t i = 0; i < minutes.size(); ++i) {
        for (std::size_t j = 0; j < minutes.size(); ++j) {
            minutes(i, j) = minutes(i, j) / params.speed_kmh * 60.0;
        }
    }

    const TypeCounts caps = caregiver_capabilities(m);
    std::vector<int> level(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        level[static_cast<std::size_t>(k)] = k < caps.type3 ? 3 : k < caps.type2 ? 2 : 1;
    }

    std::vector<Patient> patients;
    for (int i = 0; i < n; ++i) {
        patients.push_back(Patient{i + 1, duration[static_cast<std::size_t>(i)], 0.0, kShiftEnd, params.penalty,
                                   pts[static_cast<std::size_t>(i) + 1]});
    }
    std::vector<Caregiver> caregivers;
    for (int k = 0; k < m; ++k) {
        Caregiver c{k + 1, kShiftEnd, {}};
        for (int i = 0; i < n; ++i) {
            if (patient_type[static_cast<std::size_t>(i)] <= level[static_cast<std::size_t>(k)]) {
                c.eligible_patients.push_back(i + 1);
            }
        }
        caregivers.push_back(std::move(c));
    }
    const std::string name =
        params.name.empty() ? "covid" + std::to_string(n) + "_s" + std::to_string(params.seed) : params.name;
    ProblemInstance instance(name, std::move(patients), std::move(caregivers), BreakPolicy{60.0, 120.0, 300.0},
                             std::move(minutes), std::nullopt, DistanceConvention::explicit_matrix, pts[0]);
    return GeneratedInstance{std::move(instance), std::move(patient_type), std::move(level)};
}

} // namespace hhsrp::io
