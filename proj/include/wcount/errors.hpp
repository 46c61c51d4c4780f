#pragma once

#include <stdexcept>
#include <string>

namespace wcount {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define WCOUNT_DEFINE_ERROR(Name)              \
    class Name : public Error {                \
    public:                                    \
        using Error::Error;                    \
    }

WCOUNT_DEFINE_ERROR(CapExceeded);
WCOUNT_DEFINE_ERROR(ExactUnavailable);
WCOUNT_DEFINE_ERROR(MissingBound);
WCOUNT_DEFINE_ERROR(NoUniqueRational);
WCOUNT_DEFINE_ERROR(BoundViolated);
WCOUNT_DEFINE_ERROR(PromiseViolated);
WCOUNT_DEFINE_ERROR(DomainViolation);
WCOUNT_DEFINE_ERROR(PreconditionViolated);
WCOUNT_DEFINE_ERROR(InvariantViolation);
WCOUNT_DEFINE_ERROR(EmptyList);
WCOUNT_DEFINE_ERROR(ZeroEvidence);
WCOUNT_DEFINE_ERROR(MalformedFormula);

#undef WCOUNT_DEFINE_ERROR

/// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace wcount
