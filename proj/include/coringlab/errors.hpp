#pragma once

#include <stdexcept>
#include <string>

namespace coringlab {

enum class ErrorCode {
    EmptyFamily,
    NotAssociative,
    NoUpperBound,
    IndependenceFailure,
    NotNatural,
    NotFGProjective,
    WellDefinednessFailure,
    IndexDependence,
    LawFailure,
    NotCentral,
    CotensorMembershipFailure,
    NotColinearTransitions,
    PreconditionFailure,
    BudgetExceeded,
    ParseError,
    Internal,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::EmptyFamily: return "EmptyFamily";
        case ErrorCode::NotAssociative: return "NotAssociative";
        case ErrorCode::NoUpperBound: return "NoUpperBound";
        case ErrorCode::IndependenceFailure: return "IndependenceFailure";
        case ErrorCode::NotNatural: return "NotNatural";
        case ErrorCode::NotFGProjective: return "NotFGProjective";
        case ErrorCode::WellDefinednessFailure: return "WellDefinednessFailure";
        case ErrorCode::IndexDependence: return "IndexDependence";
        case ErrorCode::LawFailure: return "LawFailure";
        case ErrorCode::NotCentral: return "NotCentral";
        case ErrorCode::CotensorMembershipFailure: return "CotensorMembershipFailure";
        case ErrorCode::NotColinearTransitions: return "NotColinearTransitions";
        case ErrorCode::PreconditionFailure: return "PreconditionFailure";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace coringlab
