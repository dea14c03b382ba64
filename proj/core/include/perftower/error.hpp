#ifndef PERFTOWER_ERROR_HPP
#define PERFTOWER_ERROR_HPP

#include <stdexcept>
#include <string>

namespace perftower {

// Library-wide error with a stable machine-readable kind tag.
// Kinds in use: invalid-ring, ambient-mismatch, parse-error, schema-error,
// ill-defined-map, no-preimage, not-applicable, malformed-denominator,
// precondition, diagram-violation, exactness-violation, anchor-violation,
// out-of-range, internal.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& message) {
    throw Error(kind, message);
}

// Parse failures carry a position for CLI diagnostics.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error("parse-error",
                message + " (line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ")"),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

} // namespace perftower

#endif
