#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace stp {

// Base class for every error raised by the library. `code()` is a short
// machine-readable tag (e.g. "ratio_mismatch") that the CLI forwards verbatim.
class error : public std::runtime_error {
public:
    error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// A well-formed request the algebra cannot satisfy (shape/ratio mismatch,
// invalid basis index, ...).
class domain_error : public error {
public:
    using error::error;
};

// Malformed input text: JSON, CSV, rational literals.
class parse_error : public error {
public:
    using error::error;
};

} // namespace stp
