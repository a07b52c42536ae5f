#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plumbcalc {

enum class ErrorCode {
    InvalidArgument,
    ZeroTail,
    NotExpandable,
    NotCoprime,
    NotDefinite,
    NotNegativeDefinite,
    NotUnimodular,
    SingularMod2,
    RankTooLarge,
    PatternNotFound,
    NotStarShaped,
    NotATree,
    TableInvariantViolated,
    RankGuardExceeded,
    Overflow,
    SearchLimitExceeded,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ZeroTail: return "ZeroTail";
        case ErrorCode::NotExpandable: return "NotExpandable";
        case ErrorCode::NotCoprime: return "NotCoprime";
        case ErrorCode::NotDefinite: return "NotDefinite";
        case ErrorCode::NotNegativeDefinite: return "NotNegativeDefinite";
        case ErrorCode::NotUnimodular: return "NotUnimodular";
        case ErrorCode::SingularMod2: return "SingularMod2";
        case ErrorCode::RankTooLarge: return "RankTooLarge";
        case ErrorCode::PatternNotFound: return "PatternNotFound";
        case ErrorCode::NotStarShaped: return "NotStarShaped";
        case ErrorCode::NotATree: return "NotATree";
        case ErrorCode::TableInvariantViolated: return "TableInvariantViolated";
        case ErrorCode::RankGuardExceeded: return "RankGuardExceeded";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::SearchLimitExceeded: return "SearchLimitExceeded";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it to a stable exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace plumbcalc
