#include "hhsrp/io/solomon.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "records.hpp"
#include "text.hpp"

namespace hhsrp::io {

SidecarConfig parse_sidecar_text(const std::string& content, const std::string& source) {
    text::Reader r(source, text::tokenize(content));
    if (r.done()) {
        r.fail(1, "empty sidecar");
    }
    const text::Line& head = r.next();
    if (head.tokens.size() != 2 || head.tokens[0].text != "hhsrp-sidecar" || head.tokens[1].text != "1") {
        r.fail(head, 0, std::string("expected header '") + kSidecarHeader + "'");
    }
    SidecarConfig cfg;
    std::vector<text::Line> caregiver_lines;
    bool have_caregivers = false;
    while (!r.done()) {
        const text::Line& line = r.next();
        const std::string& key = line.tokens[0].text;
        if (key == "break") {
            cfg.lunch = records::parse_break(r, line);
        } else if (key == "distance") {
            cfg.convention = records::parse_distance(r, line);
            if (*cfg.convention == DistanceConvention::explicit_matrix) {
                r.fail(line, 1, "Solomon files carry coordinates; pick a Euclidean convention");
            }
        } else if (key == "caregivers") {
            r.expect_count(line, 2);
            const long m = r.integer(line, 1);
            if (m < 1) {
                r.fail(line, 1, "caregiver count must be >= 1");
            }
            cfg.caregivers = static_cast<int>(m);
            have_caregivers = true;
        } else if (key == "patients") {
            r.expect_count(line, 2);
            const long n = r.integer(line, 1);
            if (n < 0) {
                r.fail(line, 1, "patient count must be >= 0");
            }
            cfg.patients = static_cast<int>(n);
        } else if (key == "penalty") {
            r.expect_count(line, 2);
            cfg.penalty = r.number(line, 1);
        } else if (key == "name") {
            r.expect_count(line, 2);
            cfg.name = line.tokens[1].text;
        } else if (key == "working_time") {
            r.expect_count(line, 2);
            cfg.working_time = r.number(line, 1);
        } else if (key == "caregiver") {
            caregiver_lines.push_back(line);
        } else if (key == "end") {
            r.expect_count(line, 1);
            break;
        } else {
            r.fail(line, 0, "unknown sidecar record '" + key + "'");
        }
    }
    if (!cfg.lunch) {
        r.fail(r.last_line(), "sidecar must define the break policy ('break <duration> <open> <close>')");
    }
    if (!cfg.convention) {
        r.fail(r.last_line(), "sidecar must define the distance convention");
    }
    if (!have_caregivers) {
        r.fail(r.last_line(), "sidecar must define 'caregivers <count>'");
    }
    // patient ids in eligibility lines are checked against the imported size later
    for (const text::Line& line : caregiver_lines) {
        const bool all = line.tokens.size() == 4 && line.tokens[3].text == "all";
        Caregiver c = all ? records::parse_caregiver(r, line, 0)
                          : records::parse_caregiver(r, line, std::numeric_limits<int>::max());
        if (c.id < 1 || c.id > cfg.caregivers) {
            r.fail(line, 1, "caregiver id out of range 1.." + std::to_string(cfg.caregivers));
        }
        if (std::any_of(cfg.overrides.begin(), cfg.overrides.end(), [&c](const auto& o) { return o.id == c.id; })) {
            r.fail(line, 1, "caregiver " + std::to_string(c.id) + " listed twice");
        }
        SidecarConfig::CaregiverOverride o{c.id, c.max_working_time, std::nullopt};
        if (!all) {
            o.eligible = std::move(c.eligible_patients);
        }
        cfg.overrides.push_back(std::move(o));
    }
    return cfg;
}

SidecarConfig parse_sidecar(const std::filesystem::path& path) {
    return parse_sidecar_text(text::read_file(path), path.string());
}

std::optional<int> size_suffix(const std::string& name) {
    const auto us = name.rfind('_');
    if (us == std::string::npos || us + 1 >= name.size()) {
        return std::nullopt;
    }
    int value = 0;
    const char* first = name.data() + us + 1;
    const char* last = name.data() + name.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
        return std::nullopt;
    }
    return value;
}

ProblemInstance import_solomon_text(const std::string& content,
                                    const std::string& stem,
                                    const SidecarConfig& sidecar,
                                    const std::string& source) {
    if (!sidecar.lunch) {
        throw std::invalid_argument("import needs a break policy; none given in the sidecar");
    }
    if (!sidecar.convention || *sidecar.convention == DistanceConvention::explicit_matrix) {
        throw std::invalid_argument("import needs a Euclidean distance convention");
    }
    if (sidecar.caregivers < 1) {
        throw std::invalid_argument("import needs at least one caregiver");
    }
    text::Reader r(source, text::tokenize(content));
    struct Row {
        long id;
        double x, y, ready, due, service;
    };
    std::vector<Row> rows;
    std::string file_name;
    while (!r.done()) {
        const text::Line& line = r.next();
        if (file_name.empty()) {
            file_name = line.tokens[0].text;
        }
        if (line.tokens.size() != 7) {
            continue;
        }
        // header lines never have seven numeric fields
        long id = 0;
        const std::string& t0 = line.tokens[0].text;
        if (std::from_chars(t0.data(), t0.data() + t0.size(), id).ptr != t0.data() + t0.size()) {
            continue;
        }
        const long expected = static_cast<long>(rows.size());
        if (id != expected) {
            r.fail(line, 0, "customer rows must be numbered consecutively from 0; expected " +
                                std::to_string(expected));
        }
        rows.push_back({id, r.number(line, 1), r.number(line, 2), r.number(line, 4), r.number(line, 5),
                        r.number(line, 6)});
    }
    if (rows.empty()) {
        r.fail(r.last_line(), "no depot row found");
    }
    const std::string name = sidecar.name ? *sidecar.name : stem;
    const int available = static_cast<int>(rows.size()) - 1;
    int n = available;
    if (sidecar.patients) {
        n = *sidecar.patients;
    } else if (auto s = size_suffix(name)) {
        n = *s;
    }
    if (n > available) {
        throw std::invalid_argument(source + ": asks for " + std::to_string(n) + " patients but the file has " +
                                    std::to_string(available) + " customers");
    }

    const Row& depot = rows[0];
    const double shift = sidecar.working_time ? *sidecar.working_time : depot.due;
    std::vector<Point> pts{{depot.x, depot.y}};
    std::vector<Patient> patients;
    for (int i = 1; i <= n; ++i) {
        const Row& row = rows[static_cast<std::size_t>(i)];
        patients.push_back(Patient{i, row.service, row.ready, row.due, sidecar.penalty, Point{row.x, row.y}});
        pts.push_back({row.x, row.y});
    }
    std::vector<Caregiver> caregivers;
    for (int k = 1; k <= sidecar.caregivers; ++k) {
        Caregiver c{k, shift, {}};
        auto it = std::find_if(sidecar.overrides.begin(), sidecar.overrides.end(),
                               [k](const auto& o) { return o.id == k; });
        if (it != sidecar.overrides.end()) {
            c.max_working_time = it->max_working_time;
        }
        if (it != sidecar.overrides.end() && it->eligible) {
            for (PatientId p : *it->eligible) {
                if (p > n) {
                    throw std::invalid_argument("sidecar eligibility of caregiver " + std::to_string(k) +
                                                " names patient " + std::to_string(p) + " beyond " +
                                                std::to_string(n));
                }
            }
            c.eligible_patients = *it->eligible;
        } else {
            for (PatientId p = 1; p <= n; ++p) {
                c.eligible_patients.push_back(p);
            }
        }
        caregivers.push_back(std::move(c));
    }
    std::string full_name = name;
    if (!sidecar.name && !size_suffix(name)) {
        full_name += "_" + std::to_string(n);
    }
    return ProblemInstance(full_name, std::move(patients), std::move(caregivers), *sidecar.lunch,
                           euclidean_matrix(pts, *sidecar.convention), std::nullopt, *sidecar.convention, pts[0]);
}

ProblemInstance import_solomon(const std::filesystem::path& path, const SidecarConfig& sidecar) {
    return import_solomon_text(text::read_file(path), path.stem().string(), sidecar, path.string());
}

} // namespace hhsrp::io
