#pragma once

#include <stdexcept>
#include <string>

namespace qvd {

enum class ErrorCode {
    InvalidArgument = 1,
    Domain,
    Window,
    NonConvergent,
    DivergentTail,
    PrecisionExhausted,
    Overflow,
    ConstancyViolation,
    Integrability,
    NoWitness,
    EmptyPattern,
    Precondition,
    IllConditioned,
    DegenerateLeading,
    Io,
    Parse,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace qvd
