#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hhsrp/core/model.hpp"
#include "hhsrp/io/errors.hpp"

namespace hhsrp::io {

inline constexpr const char* kSidecarHeader = "hhsrp-sidecar 1";

/// What a Solomon file lacks. Break policy and distance convention are mandatory.
struct SidecarConfig {
    std::optional<BreakPolicy> lunch;
    std::optional<DistanceConvention> convention;
    int caregivers = 0;
    /// Number of leading customers kept; defaults to the _30/_50/_100 name suffix.
    std::optional<int> patients;
    double penalty = 1000.0;
    std::optional<std::string> name;
    /// Shift length; defaults to the depot due time.
    std::optional<double> working_time;
    struct CaregiverOverride {
        CaregiverId id = 0;
        double max_working_time = 0.0;
        /// std::nullopt means every patient.
        std::optional<std::vector<PatientId>> eligible;
    };
    /// Caregivers not listed serve everyone for the default shift.
    std::vector<CaregiverOverride> overrides;
};

SidecarConfig parse_sidecar(const std::filesystem::path& path);
SidecarConfig parse_sidecar_text(const std::string& content, const std::string& source = "<memory>");

/// Trailing _<digits> of an instance name, e.g. 30 for "C101_30".
std::optional<int> size_suffix(const std::string& name);

/// Builds an instance from a Solomon file. The first customer rows become
/// patients 1..n, the depot due time becomes the shift length.
ProblemInstance import_solomon(const std::filesystem::path& path, const SidecarConfig& sidecar);
ProblemInstance import_solomon_text(const std::string& content,
                                    const std::string& stem,
                                    const SidecarConfig& sidecar,
                                    const std::string& source = "<memory>");

} // namespace hhsrp::io
