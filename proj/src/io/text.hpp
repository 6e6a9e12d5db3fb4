#pragma once

// Line/token reader shared by the text formats. Not installed.

#include <filesystem>
#include <string>
#include <vector>

#include "hhsrp/io/errors.hpp"

namespace hhsrp::io::text {

struct Token {
    std::string text;
    int column = 0;
};

struct Line {
    int number = 0;
    std::vector<Token> tokens;
};

/// Splits on whitespace, drops '#' comments and blank lines.
std::vector<Line> tokenize(const std::string& content);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

/// Shortest representation that reads back to the same double.
std::string format_number(double value);

class Reader {
public:
    Reader(std::string source, std::vector<Line> lines)
        : source_(std::move(source))
        , lines_(std::move(lines)) { }

    bool done() const noexcept { return pos_ >= lines_.size(); }
    const Line& peek() const { return lines_[pos_]; }
    const Line& next() { return lines_[pos_++]; }
    int last_line() const { return lines_.empty() ? 0 : lines_.back().number; }

    [[noreturn]] void fail(const Line& line, std::size_t token, const std::string& message) const;
    [[noreturn]] void fail(int line, const std::string& message) const;

    void expect_count(const Line& line, std::size_t count) const;
    void expect_at_least(const Line& line, std::size_t count) const;
    double number(const Line& line, std::size_t token) const;
    long integer(const Line& line, std::size_t token) const;
    const std::string& word(const Line& line, std::size_t token) const;

    const std::string& source() const noexcept { return source_; }

private:
    std::string source_;
    std::vector<Line> lines_;
    std::size_t pos_ = 0;
};

} // namespace hhsrp::io::text
