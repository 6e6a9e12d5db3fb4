#pragma once

#include <filesystem>
#include <string>

#include "hhsrp/core/model.hpp"
#include "hhsrp/io/errors.hpp"

namespace hhsrp::io {

/// First line of every instance file.
inline constexpr const char* kInstanceHeader = "hhsrp-instance 1";

/// Reads an instance file. Syntax problems raise ParseError (line/column);
/// data that parses but breaks a model invariant raises ModelError.
ProblemInstance parse_native(const std::filesystem::path& path);
ProblemInstance parse_native_text(const std::string& content, const std::string& source = "<memory>");

/// Lossless text form. Matrices are written when they cannot be rebuilt from
/// the coordinates and the distance convention.
std::string format_native(const ProblemInstance& instance);
void write_native(const ProblemInstance& instance, const std::filesystem::path& path);

} // namespace hhsrp::io
