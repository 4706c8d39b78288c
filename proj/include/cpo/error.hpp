#pragma once

#include <stdexcept>
#include <string>

namespace cpo {

enum class ErrorCode {
    Syntax,
    Duplicate,
    UnknownSort,
    UnknownSymbol,
    UnknownVariable,
    IllTyped,
    ArityMismatch,
    Shadowing,
    InvalidDeclaration,
    SpaceTooLarge,
    BudgetExhausted,
};

const char* error_code_name(ErrorCode c);

struct SourcePos {
    int line = 0;
    int column = 0;
};

/// Errors raised while building the syntactic objects of a problem.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, SourcePos pos = {})
        : std::runtime_error(std::move(message)), code_(code), pos_(pos) {}

    ErrorCode code() const { return code_; }
    SourcePos pos() const { return pos_; }

private:
    ErrorCode code_;
    SourcePos pos_;
};

}  // namespace cpo
