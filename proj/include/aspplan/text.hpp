#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aspplan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input text could not be parsed. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Input parsed but violates a semantic rule (undeclared symbol, bad arity, cycle, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

template <typename Range, typename Fn>
std::string join(const Range& items, std::string_view sep, Fn&& fn) {
    std::ostringstream out;
    bool first = true;
    for (const auto& item : items) {
        if (!first) out << sep;
        first = false;
        out << fn(item);
    }
    return out.str();
}

template <typename Range>
std::string join(const Range& items, std::string_view sep) {
    return join(items, sep, [](const auto& x) { return x; });
}

std::string trim(std::string_view s);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// 64-bit FNV-1a; used for stable digests and feature hashing.
std::uint64_t fnv1a(std::string_view data);
std::string hex_digest(std::string_view data);

bool is_identifier(std::string_view s);

}  // namespace aspplan
