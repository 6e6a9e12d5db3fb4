#include "hhsrp/io/native.hpp"

#include <optional>
#include <sstream>

#include "records.hpp"
#include "text.hpp"

namespace hhsrp::io {

namespace {

SquareMatrix parse_matrix(text::Reader& r, const text::Line& keyword, std::size_t size) {
    r.expect_count(keyword, 1);
    SquareMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) {
        if (r.done()) {
            r.fail(r.last_line(), "matrix '" + keyword.tokens[0].text + "' ends after " + std::to_string(i) + " rows");
        }
        const text::Line& row = r.next();
        if (row.tokens.size() != size) {
            r.fail(row, std::min(row.tokens.size(), size),
                   "matrix row needs " + std::to_string(size) + " entries, found " + std::to_string(row.tokens.size()));
        }
        for (std::size_t j = 0; j < size; ++j) {
            m(i, j) = r.number(row, j);
        }
    }
    return m;
}

std::optional<double> coordinate(const text::Reader& r, const text::Line& line, std::size_t token) {
    if (r.word(line, token) == "-") {
        return std::nullopt;
    }
    return r.number(line, token);
}

std::optional<Point> point(const text::Reader& r, const text::Line& line, std::size_t token) {
    const auto x = coordinate(r, line, token);
    const auto y = coordinate(r, line, token + 1);
    if (x.has_value() != y.has_value()) {
        r.fail(line, token, "give both coordinates or '-' for both");
    }
    if (!x) {
        return std::nullopt;
    }
    return Point{*x, *y};
}

std::string matrix_text(const char* keyword, const SquareMatrix& m) {
    std::string out = std::string(keyword) + "\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            out += (j ? " " : "") + text::format_number(m(i, j));
        }
        out += "\n";
    }
    return out;
}

} // namespace

ProblemInstance parse_native_text(const std::string& content, const std::string& source) {
    text::Reader r(source, text::tokenize(content));
    if (r.done()) {
        r.fail(1, "empty instance file");
    }
    {
        const text::Line& head = r.next();
        if (head.tokens.size() != 2 || head.tokens[0].text != "hhsrp-instance") {
            r.fail(head, 0, std::string("expected header '") + kInstanceHeader + "'");
        }
        if (head.tokens[1].text != "1") {
            r.fail(head, 1, "unsupported format version " + head.tokens[1].text);
        }
    }

    std::optional<std::string> name;
    std::optional<DistanceConvention> convention;
    std::optional<BreakPolicy> lunch;
    std::optional<std::optional<Point>> depot;
    int n = -1;
    int m = -1;
    std::vector<std::optional<Patient>> patients;
    std::vector<std::optional<Caregiver>> caregivers;
    std::optional<SquareMatrix> travel_time;
    std::optional<SquareMatrix> travel_cost;
    bool ended = false;

    auto need_counts = [&](const text::Line& line) {
        if (n < 0) {
            r.fail(line, 0, "'" + line.tokens[0].text + "' before 'counts'");
        }
    };
    auto once = [&](bool seen, const text::Line& line) {
        if (seen) {
            r.fail(line, 0, "duplicate '" + line.tokens[0].text + "'");
        }
    };

    while (!r.done()) {
        const text::Line& line = r.next();
        const std::string& key = line.tokens[0].text;
        if (ended) {
            r.fail(line, 0, "content after 'end'");
        }
        if (key == "name") {
            once(name.has_value(), line);
            r.expect_count(line, 2);
            name = line.tokens[1].text;
        } else if (key == "distance") {
            once(convention.has_value(), line);
            convention = records::parse_distance(r, line);
        } else if (key == "counts") {
            once(n >= 0, line);
            r.expect_count(line, 3);
            const long pn = r.integer(line, 1);
            const long pm = r.integer(line, 2);
            if (pn < 0) {
                r.fail(line, 1, "patient count must be >= 0");
            }
            if (pm < 1) {
                r.fail(line, 2, "caregiver count must be >= 1");
            }
            n = static_cast<int>(pn);
            m = static_cast<int>(pm);
            patients.assign(static_cast<std::size_t>(n), std::nullopt);
            caregivers.assign(static_cast<std::size_t>(m), std::nullopt);
        } else if (key == "break") {
            once(lunch.has_value(), line);
            lunch = records::parse_break(r, line);
        } else if (key == "depot") {
            once(depot.has_value(), line);
            if (line.tokens.size() == 2 && line.tokens[1].text == "-") {
                depot = std::optional<Point>{};
            } else {
                r.expect_count(line, 3);
                depot = point(r, line, 1);
            }
        } else if (key == "patient") {
            need_counts(line);
            r.expect_count(line, 8);
            const long id = r.integer(line, 1);
            if (id < 1 || id > n) {
                r.fail(line, 1, "patient id " + std::to_string(id) + " out of range 1.." + std::to_string(n));
            }
            auto& slot = patients[static_cast<std::size_t>(id - 1)];
            if (slot) {
                r.fail(line, 1, "patient " + std::to_string(id) + " defined twice");
            }
            slot = Patient{static_cast<PatientId>(id), r.number(line, 4), r.number(line, 5), r.number(line, 6),
                           r.number(line, 7), point(r, line, 2)};
        } else if (key == "caregiver") {
            need_counts(line);
            Caregiver c = records::parse_caregiver(r, line, n);
            if (c.id < 1 || c.id > m) {
                r.fail(line, 1, "caregiver id " + std::to_string(c.id) + " out of range 1.." + std::to_string(m));
            }
            auto& slot = caregivers[static_cast<std::size_t>(c.id - 1)];
            if (slot) {
                r.fail(line, 1, "caregiver " + std::to_string(c.id) + " defined twice");
            }
            slot = std::move(c);
        } else if (key == "travel_time") {
            need_counts(line);
            once(travel_time.has_value(), line);
            travel_time = parse_matrix(r, line, static_cast<std::size_t>(n) + 1);
        } else if (key == "travel_cost") {
            need_counts(line);
            once(travel_cost.has_value(), line);
            travel_cost = parse_matrix(r, line, static_cast<std::size_t>(n) + 1);
        } else if (key == "end") {
            r.expect_count(line, 1);
            ended = true;
        } else {
            r.fail(line, 0, "unknown record '" + key + "'");
        }
    }

    const int last = r.last_line();
    if (!ended) {
        r.fail(last, "missing 'end'");
    }
    if (!name) {
        r.fail(last, "missing 'name'");
    }
    if (!convention) {
        r.fail(last, "missing 'distance'");
    }
    if (n < 0) {
        r.fail(last, "missing 'counts'");
    }
    if (!lunch) {
        r.fail(last, "missing 'break'");
    }
    std::vector<Patient> ps;
    for (std::size_t i = 0; i < patients.size(); ++i) {
        if (!patients[i]) {
            r.fail(last, "patient " + std::to_string(i + 1) + " not defined");
        }
        ps.push_back(*patients[i]);
    }
    std::vector<Caregiver> cs;
    for (std::size_t i = 0; i < caregivers.size(); ++i) {
        if (!caregivers[i]) {
            r.fail(last, "caregiver " + std::to_string(i + 1) + " not defined");
        }
        cs.push_back(*caregivers[i]);
    }
    const std::optional<Point> depot_at = depot ? *depot : std::nullopt;

    if (!travel_time) {
        // no explicit matrix: coordinates and a Euclidean convention are required
        if (*convention == DistanceConvention::explicit_matrix) {
            r.fail(last, "distance explicit_matrix needs a 'travel_time' block");
        }
        if (!depot_at) {
            r.fail(last, "depot coordinates needed when no 'travel_time' block is given");
        }
        std::vector<Point> pts{*depot_at};
        for (const Patient& p : ps) {
            if (!p.location) {
                r.fail(last, "patient " + std::to_string(p.id) + " has no coordinates and no 'travel_time' block");
            }
            pts.push_back(*p.location);
        }
        travel_time = euclidean_matrix(pts, *convention);
    }
    return ProblemInstance(*name, std::move(ps), std::move(cs), *lunch, std::move(*travel_time), std::move(travel_cost),
                           *convention, depot_at);
}

ProblemInstance parse_native(const std::filesystem::path& path) {
    return parse_native_text(text::read_file(path), path.string());
}

std::string format_native(const ProblemInstance& instance) {
    std::ostringstream os;
    const auto num = text::format_number;
    std::string name = instance.name().empty() ? "unnamed" : instance.name();
    for (char& c : name) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '#') {
            c = '_';
        }
    }
    os << kInstanceHeader << "\n";
    os << "name " << name << "\n";
    os << "distance " << to_string(instance.distance_convention()) << "\n";
    os << "counts " << instance.patient_count() << " " << instance.caregiver_count() << "\n";
    const BreakPolicy& b = instance.break_policy();
    os << "break " << num(b.duration) << " " << num(b.window_open) << " " << num(b.window_close) << "\n";
    if (const auto& d = instance.depot_location()) {
        os << "depot " << num(d->x) << " " << num(d->y) << "\n";
    } else {
        os << "depot -\n";
    }
    for (const Patient& p : instance.patients()) {
        os << "patient " << p.id << " ";
        if (p.location) {
            os << num(p.location->x) << " " << num(p.location->y);
        } else {
            os << "- -";
        }
        os << " " << num(p.service_duration) << " " << num(p.tw_open) << " " << num(p.tw_close) << " "
           << num(p.penalty) << "\n";
    }
    for (const Caregiver& c : instance.caregivers()) {
        os << records::format_caregiver(c, instance.patient_count()) << "\n";
    }

    bool explicit_time = instance.distance_convention() == DistanceConvention::explicit_matrix ||
                         !instance.has_coordinates();
    if (!explicit_time) {
        std::vector<Point> pts{*instance.depot_location()};
        for (const Patient& p : instance.patients()) {
            pts.push_back(*p.location);
        }
        explicit_time = !(euclidean_matrix(pts, instance.distance_convention()) == instance.travel_time_matrix());
    }
    if (explicit_time) {
        os << matrix_text("travel_time", instance.travel_time_matrix());
    }
    if (instance.has_distinct_cost_matrix()) {
        os << matrix_text("travel_cost", instance.travel_cost_matrix());
    }
    os << "end\n";
    return os.str();
}

void write_native(const ProblemInstance& instance, const std::filesystem::path& path) {
    text::write_file(path, format_native(instance));
}

} // namespace hhsrp::io
