#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>

namespace hhsrp::alns {

using Rng = std::mt19937_64;

/// Period value meaning "never applied".
inline constexpr long kNever = std::numeric_limits<long>::max();

/// Local-search gating: A0 both searches, A1 break search only, A2 Or-opt
/// only, A3 neither.
enum class VariantId { A0, A1, A2, A3 };

std::string to_string(VariantId variant);
VariantId variant_from_string(const std::string& text);

enum class RemovalKind { random, worst, shaw, proximity, time, route };
enum class InsertionKind { greedy, greedy_noise, regret2, regret2_noise, regret3, regret3_noise };

inline constexpr int kRemovalKinds = 6;
inline constexpr int kInsertionKinds = 6;

const char* to_string(RemovalKind kind);
const char* to_string(InsertionKind kind);

struct SearchConfig {
    VariantId variant = VariantId::A0;
    long theta = 25000;
    long theta_bar = 1500;
    long omega = 750;
    long tau_or = 150;
    long tau_break = 200;
    double cooling = 0.99975;
    double gamma = 0.05;
    double noise_mu = 0.1;
    double shaw_alpha = 0.3;
    double shaw_beta = 0.1;
    double removal_min_fraction = 0.1;
    double removal_max_fraction = 0.3;
    std::uint64_t seed = 1;
    /// Restart from s_best before the random-removal/regret-3 perturbation.
    bool restart_reset_to_best = true;
    /// Apply the periodic local searches to the candidate instead of the current solution.
    bool local_search_on_new = false;
    bool trace = false;

    /// Tuned defaults for a variant.
    static SearchConfig for_variant(VariantId variant);

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

} // namespace hhsrp::alns
