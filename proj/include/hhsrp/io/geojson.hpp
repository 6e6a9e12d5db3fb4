#pragma once

#include <filesystem>
#include <string>

#include "hhsrp/core/model.hpp"

namespace hhsrp::io {

/// FeatureCollection: a Point per depot and patient (banked ones carry
/// unvisited=true) and a LineString per non-empty route, depot to depot.
/// Throws std::invalid_argument when the instance has no coordinates.
std::string geojson_text(const Solution& solution, const ProblemInstance& instance);
void export_geojson(const Solution& solution, const ProblemInstance& instance, const std::filesystem::path& path);

} // namespace hhsrp::io
