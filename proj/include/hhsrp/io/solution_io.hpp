#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "hhsrp/core/model.hpp"
#include "hhsrp/core/schedule.hpp"
#include "hhsrp/io/errors.hpp"

namespace hhsrp::io {

inline constexpr const char* kSolutionHeader = "hhsrp-solution 1";

/// Routes with break placement, the computed timeline of each route, the
/// request bank and the cost breakdown.
std::string format_solution(const Solution& solution, const ProblemInstance& instance);
void write_solution(const Solution& solution, const ProblemInstance& instance, const std::filesystem::path& path);

struct SolutionDocument {
    std::string instance_name;
    Solution solution;
    std::optional<CostBreakdown> recorded_cost;
};

/// Syntax only; ids and feasibility are not checked.
SolutionDocument parse_solution_text(const std::string& content, const std::string& source = "<memory>");
SolutionDocument parse_solution_file(const std::filesystem::path& path);

/// Parses and checks against the instance: unknown ids raise ParseError, and
/// a recorded cost must match the recomputed one.
Solution read_solution(const std::filesystem::path& path, const ProblemInstance& instance);
Solution read_solution_text(const std::string& content,
                            const ProblemInstance& instance,
                            const std::string& source = "<memory>");

} // namespace hhsrp::io
