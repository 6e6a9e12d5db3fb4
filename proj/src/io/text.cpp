#include "text.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hhsrp::io {

ParseError::ParseError(const std::string& source, int line, int column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + (column > 0 ? ":" + std::to_string(column) : "") +
                         ": " + message)
    , line_(line)
    , column_(column) { }

namespace text {

std::vector<Line> tokenize(const std::string& content) {
    std::vector<Line> out;
    std::istringstream in(content);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
            }
            const std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
            }
            if (i > start) {
                line.tokens.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
            }
        }
        if (!line.tokens.empty()) {
            out.push_back(std::move(line));
        }
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read " + path.string());
    }
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

std::string format_number(double value) {
    if (value == 0.0) {
        return "0";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void Reader::fail(const Line& line, std::size_t token, const std::string& message) const {
    const int column = token < line.tokens.size() ? line.tokens[token].column : 0;
    throw ParseError(source_, line.number, column, message);
}

void Reader::fail(int line, const std::string& message) const {
    throw ParseError(source_, line, 0, message);
}

void Reader::expect_count(const Line& line, std::size_t count) const {
    if (line.tokens.size() < count) {
        fail(line, line.tokens.size(), "expected " + std::to_string(count - 1) + " values after '" +
                                           line.tokens[0].text + "'");
    }
    if (line.tokens.size() > count) {
        fail(line, count, "unexpected extra field");
    }
}

void Reader::expect_at_least(const Line& line, std::size_t count) const {
    if (line.tokens.size() < count) {
        fail(line, line.tokens.size(), "expected at least " + std::to_string(count - 1) + " values after '" +
                                           line.tokens[0].text + "'");
    }
}

double Reader::number(const Line& line, std::size_t token) const {
    if (token >= line.tokens.size()) {
        fail(line, token, "missing number");
    }
    const std::string& s = line.tokens[token].text;
    double value = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(value)) {
        fail(line, token, "expected a number, got '" + s + "'");
    }
    return value;
}

long Reader::integer(const Line& line, std::size_t token) const {
    if (token >= line.tokens.size()) {
        fail(line, token, "missing integer");
    }
    const std::string& s = line.tokens[token].text;
    long value = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        fail(line, token, "expected an integer, got '" + s + "'");
    }
    return value;
}

const std::string& Reader::word(const Line& line, std::size_t token) const {
    if (token >= line.tokens.size()) {
        fail(line, token, "missing field");
    }
    return line.tokens[token].text;
}

} // namespace text

} // namespace hhsrp::io
