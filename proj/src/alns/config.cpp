#include "hhsrp/alns/config.hpp"

#include <stdexcept>

namespace hhsrp::alns {

std::string to_string(VariantId variant) {
    switch (variant) {
    case VariantId::A0:
        return "A0";
    case VariantId::A1:
        return "A1";
    case VariantId::A2:
        return "A2";
    case VariantId::A3:
        return "A3";
    }
    return "?";
}

VariantId variant_from_string(const std::string& text) {
    for (auto v : {VariantId::A0, VariantId::A1, VariantId::A2, VariantId::A3}) {
        if (to_string(v) == text) {
            return v;
        }
    }
    throw std::invalid_argument("unknown variant '" + text + "' (expected A0..A3)");
}

const char* to_string(RemovalKind kind) {
    switch (kind) {
    case RemovalKind::random:
        return "random";
    case RemovalKind::worst:
        return "worst";
    case RemovalKind::shaw:
        return "shaw";
    case RemovalKind::proximity:
        return "proximity";
    case RemovalKind::time:
        return "time";
    case RemovalKind::route:
        return "route";
    }
    return "?";
}

const char* to_string(InsertionKind kind) {
    switch (kind) {
    case InsertionKind::greedy:
        return "greedy";
    case InsertionKind::greedy_noise:
        return "greedy_noise";
    case InsertionKind::regret2:
        return "regret2";
    case InsertionKind::regret2_noise:
        return "regret2_noise";
    case InsertionKind::regret3:
        return "regret3";
    case InsertionKind::regret3_noise:
        return "regret3_noise";
    }
    return "?";
}

SearchConfig SearchConfig::for_variant(VariantId variant) {
    SearchConfig c;
    c.variant = variant;
    switch (variant) {
    case VariantId::A0:
        c.omega = 750;
        c.tau_or = 150;
        c.tau_break = 200;
        break;
    case VariantId::A1:
        c.omega = 750;
        c.tau_or = kNever;
        c.tau_break = 200;
        break;
    case VariantId::A2:
        c.omega = 1250;
        c.tau_or = 200;
        c.tau_break = kNever;
        break;
    case VariantId::A3:
        c.omega = 1250;
        c.tau_or = kNever;
        c.tau_break = kNever;
        break;
    }
    return c;
}

void SearchConfig::validate() const {
    if (theta < 0 || theta_bar < 1) {
        throw std::invalid_argument("theta must be >= 0 and theta_bar >= 1");
    }
    if (omega < 1 || tau_or < 1 || tau_break < 1) {
        throw std::invalid_argument("omega, tau_or and tau_break must be >= 1");
    }
    if (!(cooling > 0.0 && cooling < 1.0)) {
        throw std::invalid_argument("cooling rate must lie in (0, 1)");
    }
    if (gamma < 0.0 || noise_mu < 0.0 || shaw_alpha < 0.0 || shaw_beta < 0.0) {
        throw std::invalid_argument("gamma, noise and Shaw weights must be non-negative");
    }
    if (removal_min_fraction < 0.0 || removal_max_fraction < removal_min_fraction) {
        throw std::invalid_argument("removal fractions must satisfy 0 <= min <= max");
    }
}

} // namespace hhsrp::alns
