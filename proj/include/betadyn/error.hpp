#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace betadyn {

enum class ErrorKind {
    PrecisionExhausted,
    RootNotIsolated,
    NotGreaterThanOne,
    DegenerateEquation,
    CapExceeded,
    NotAdmissible,
    NotFoundWithinBudget,
    InsufficientRuns,
    InvalidParams,
    DomainError,
    InfeasibleTargets,
    DegenerateSchedule,
    NotTemplateWord,
    InsufficientScales,
    UnmatchedCase,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace betadyn
