#pragma once

#include <stdexcept>
#include <string>

namespace hhsrp::io {

/// Malformed text input. Line and column are 1-based; column 0 means the whole line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, int line, int column, const std::string& message);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hhsrp::io
