#include "qvd/error.hpp"

namespace qvd {

const char* error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::Window: return "WindowError";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::DivergentTail: return "DivergentTail";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ConstancyViolation: return "ConstancyViolation";
    case ErrorCode::Integrability: return "IntegrabilityError";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::EmptyPattern: return "EmptyPattern";
    case ErrorCode::Precondition: return "PreconditionError";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::DegenerateLeading: return "DegenerateLeading";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Parse: return "ParseError";
    }
    return "Unknown";
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace qvd
