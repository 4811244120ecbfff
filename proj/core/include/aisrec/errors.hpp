#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aisrec {

// Failure taxonomy shared across the library. The CLI maps these onto its
// exit codes (config -> 1, data -> 2, io -> 3).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct DataError : Error {
    using Error::Error;
};

// Malformed input text; carries the 1-based line number.
struct ParseError : DataError {
    ParseError(std::size_t line, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace aisrec
