#include "hhsrp/io/geojson.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "hhsrp/core/schedule.hpp"
#include "text.hpp"

namespace hhsrp::io {

namespace {

using nlohmann::json;

json position(const Point& p) {
    return json::array({p.x, p.y});
}

} // namespace

std::string geojson_text(const Solution& solution, const ProblemInstance& instance) {
    if (!instance.has_coordinates()) {
        throw std::invalid_argument("instance '" + instance.name() + "' has no coordinates to export");
    }
    const Point depot = *instance.depot_location();
    json features = json::array();
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Point"}, {"coordinates", position(depot)}}},
                        {"properties", {{"kind", "depot"}, {"id", 0}}}});

    std::vector<int> caregiver_of(static_cast<std::size_t>(instance.patient_count()) + 1, 0);
    std::vector<int> order_of(caregiver_of.size(), 0);
    for (const RoutePlan& route : solution.routes) {
        for (std::size_t i = 0; i < route.visits.size(); ++i) {
            const PatientId p = route.visits[i];
            if (instance.has_patient(p)) {
                caregiver_of[static_cast<std::size_t>(p)] = route.caregiver;
                order_of[static_cast<std::size_t>(p)] = static_cast<int>(i) + 1;
            }
        }
    }
    for (const Patient& p : instance.patients()) {
        const bool banked =
            std::find(solution.request_bank.begin(), solution.request_bank.end(), p.id) != solution.request_bank.end();
        json props = {{"kind", "patient"},   {"id", p.id},           {"unvisited", banked},
                      {"tw_open", p.tw_open}, {"tw_close", p.tw_close}, {"service", p.service_duration}};
        if (!banked) {
            props["caregiver"] = caregiver_of[static_cast<std::size_t>(p.id)];
            props["order"] = order_of[static_cast<std::size_t>(p.id)];
        }
        features.push_back({{"type", "Feature"},
                            {"geometry", {{"type", "Point"}, {"coordinates", position(*p.location)}}},
                            {"properties", props}});
    }
    for (const RoutePlan& route : solution.routes) {
        if (route.visits.empty()) {
            continue;
        }
        json coords = json::array({position(depot)});
        for (PatientId p : route.visits) {
            coords.push_back(position(*instance.patient(p).location));
        }
        coords.push_back(position(depot));
        features.push_back({{"type", "Feature"},
                            {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
                            {"properties",
                             {{"kind", "route"},
                              {"caregiver", route.caregiver},
                              {"visits", route.visits},
                              {"travel_cost", route_travel_cost(route.visits, instance)}}}});
    }
    const json doc = {{"type", "FeatureCollection"}, {"name", instance.name()}, {"features", features}};
    return doc.dump(1) + "\n";
}

void export_geojson(const Solution& solution, const ProblemInstance& instance, const std::filesystem::path& path) {
    text::write_file(path, geojson_text(solution, instance));
}

} // namespace hhsrp::io
