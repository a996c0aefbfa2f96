#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace hwpoly {

// Base for every error raised by the library. `kind()` is a short
// machine-readable tag the CLI prints in front of the message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error("invalid-argument", what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : Error("parse", source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class HashOverflow : public Error {
public:
    explicit HashOverflow(const std::string& what) : Error("hash-overflow", what) {}
};

class Unstable : public Error {
public:
    explicit Unstable(const std::string& what) : Error("unstable", what) {}
};

class DatabaseError : public Error {
public:
    explicit DatabaseError(const std::string& what) : Error("database", what) {}
};

}  // namespace hwpoly
