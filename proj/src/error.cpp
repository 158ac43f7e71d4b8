#include "betadyn/error.hpp"

namespace betadyn {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::RootNotIsolated: return "RootNotIsolated";
    case ErrorKind::NotGreaterThanOne: return "NotGreaterThanOne";
    case ErrorKind::DegenerateEquation: return "DegenerateEquation";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::NotFoundWithinBudget: return "NotFoundWithinBudget";
    case ErrorKind::InsufficientRuns: return "InsufficientRuns";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InfeasibleTargets: return "InfeasibleTargets";
    case ErrorKind::DegenerateSchedule: return "DegenerateSchedule";
    case ErrorKind::NotTemplateWord: return "NotTemplateWord";
    case ErrorKind::InsufficientScales: return "InsufficientScales";
    case ErrorKind::UnmatchedCase: return "UnmatchedCase";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace betadyn
