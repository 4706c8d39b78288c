#pragma once

#include <string>
#include <vector>

#include "cpo/error.hpp"

namespace cpo {

enum class Severity { Error, Warning };

/// One validation finding. `code` is a stable identifier such as
/// "SmallSortViolation"; `witness` holds a position or symbol pair when the
/// check produces one.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string module;
    std::string code;
    std::string subject;
    std::string message;
    std::string witness;
    SourcePos pos;
};

inline bool has_errors(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds)
        if (d.severity == Severity::Error) return true;
    return false;
}

}  // namespace cpo
