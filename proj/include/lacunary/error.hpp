#ifndef LACUNARY_ERROR_HPP
#define LACUNARY_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace lacunary
{

// Every failure raised by the library carries one of these kinds so callers
// (and the CLI exit-code mapping) can tell them apart without string matching.
enum class ErrorKind {
    Arity,             // exponent tuple length disagrees with the variable count
    RingMismatch,      // operands over different coefficient rings
    UnsupportedRing,   // operation not defined for this ring
    Precondition,      // caller violated a documented precondition
    DivisionByZero,    // zero divisor polynomial
    Degree,            // degree precondition (e.g. deg h >= deg g)
    Bound,             // exponent outside a packing bound
    Budget,            // size/term/bit budget exceeded
    ResourceLimit,     // randomized search ran out of attempts
    NotInSubgroup,     // discrete log input outside <omega>
    InexactDivision,   // integer division without exact quotient
    NonSplit,          // recurrence polynomial does not split into subgroup roots
    DuplicateRoot,     // Vandermonde nodes not distinct
    ExponentOutOfRange,// recovered exponent violates the degree bound
    HeightBound,       // recovered coefficient violates the height bound
    CandidateBudget,   // too many rational-root candidates
    Parse,             // malformed polynomial file
    VerificationFailed,// interpolant disagrees with the black box
    Io,                // file could not be opened or written
};

inline std::string_view to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Arity: return "arity";
    case ErrorKind::RingMismatch: return "ring-mismatch";
    case ErrorKind::UnsupportedRing: return "unsupported-ring";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::Degree: return "degree";
    case ErrorKind::Bound: return "bound";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::NotInSubgroup: return "not-in-subgroup";
    case ErrorKind::InexactDivision: return "inexact-division";
    case ErrorKind::NonSplit: return "non-split";
    case ErrorKind::DuplicateRoot: return "duplicate-root";
    case ErrorKind::ExponentOutOfRange: return "exponent-out-of-range";
    case ErrorKind::HeightBound: return "height-bound";
    case ErrorKind::CandidateBudget: return "candidate-budget";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::VerificationFailed: return "verification-failed";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

} // namespace lacunary

#endif
