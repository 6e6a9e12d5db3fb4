#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "hhsrp/core/model.hpp"

namespace hhsrp::oracle {

struct OracleLimits {
    int max_patients = 7;
    int max_caregivers = 3;
};

/// Instance too large for exhaustive search.
class OracleRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    bool feasible = false; ///< false only if not even the all-banked solution is feasible
    double optimum_cost = 0.0;
    Solution solution;
    /// Feasible solutions enumerated (assignment x visit order x break placement).
    std::uint64_t feasible_count = 0;
};

/// Exhaustive optimum. Assignment vectors over {bank, caregiver 1..m} in
/// lexicographic order, visit orders by next_permutation, every break
/// placement; the first optimum found is returned. Throws OracleRefusal past
/// the limits.
OracleResult brute_force_optimum(const ProblemInstance& instance, OracleLimits limits = {});

/// Optimum from a label-setting DP over (visited set, last patient, break
/// taken) per caregiver merged by subset convolution. Shares no evaluation
/// code with the brute force; +infinity when infeasible.
double dp_optimum(const ProblemInstance& instance, OracleLimits limits = {});

struct CertifyReport {
    double engine_cost = 0.0;
    double oracle_cost = 0.0;
    double gap = 0.0;         ///< engine - oracle
    double gap_percent = 0.0; ///< 100 * gap / oracle (0 when oracle is 0 and gap is 0)
    bool optimal = false;
    bool engine_below_oracle = false; ///< impossible for a correct engine and oracle
    std::string text;
};

CertifyReport certify(double engine_best, const OracleResult& oracle);

/// Seed family of small instances: 4 to 6 patients (4 + seed % 3), 2 caregivers,
/// clustered time windows and a break window every caregiver can meet.
ProblemInstance tiny_instance(std::uint64_t seed);

} // namespace hhsrp::oracle
