#pragma once

#include <stdexcept>
#include <string>

namespace polysched {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments or malformed instances.
struct InvalidInput : Error {
    using Error::Error;
};

// A theorem hypothesis does not hold; `hypothesis` names which one.
struct PreconditionError : Error {
    std::string hypothesis;
    PreconditionError(std::string hyp, const std::string& msg)
        : Error(hyp + ": " + msg), hypothesis(std::move(hyp)) {}
};

// A size guard was hit; the computation was not attempted.
struct Refused : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::string location;
    ParseError(std::string loc, const std::string& msg)
        : Error(loc.empty() ? msg : loc + ": " + msg), location(std::move(loc)) {}
};

// A schedule breaks a structural rule (non-matching day, unknown edge).
struct ValidationError : Error {
    using Error::Error;
};

// Postcondition check failed inside the library. Always a bug.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace polysched
