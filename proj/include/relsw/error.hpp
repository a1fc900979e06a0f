#pragma once

#include <stdexcept>
#include <string>

namespace relsw {

/// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
    Schema,             // malformed input document or inconsistent lattice data
    Precondition,       // an operation was called outside its domain
    NonCharacteristic,  // a dimension numerator is not divisible by 4
    Hypothesis,         // a standing hypothesis (e.g. on the reducible end) fails
    MissingEntry,       // a relative-invariant table lacks a required key
    Convergence,        // a numerical solver gave up
    Internal            // two evaluation routes disagreed
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::Schema: return "schema";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::NonCharacteristic: return "non-characteristic input";
        case ErrorKind::Hypothesis: return "hypothesis";
        case ErrorKind::MissingEntry: return "missing entry";
        case ErrorKind::Convergence: return "convergence";
        case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace relsw
