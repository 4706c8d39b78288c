#pragma once

#include <string>
#include <vector>

#include "cpo/diagnostic.hpp"
#include "cpo/signature.hpp"
#include "cpo/type_order.hpp"

namespace cpo {

/// Computability-property position sets of a type relative to a sort.
struct CompPositions {
    PosSet spos, npos, lpos, cpos;
};

CompPositions comp_positions(const std::string& a, const TypePtr& t);

/// Conditions for a symbol declared small: (small-sort) when
/// the output type is a sort, (small-arrow) otherwise. Empty when the
/// symbol is admissible as small.
std::vector<Diagnostic> check_small_conditions(const SymbolDecl& f, const TypeOrder& ord);

struct Eligibility {
    std::string symbol;
    bool eligible = false;
    /// Any of "order<=1", "strictly-positive", "order<=2-positive",
    /// followed by "direct-check" which always decides.
    std::vector<std::string> conditions;
    std::vector<Diagnostic> reasons;
};

std::vector<Eligibility> classify_small_candidates(const Problem& p, const TypeOrder& ord);

/// Class consistency (status, size), small-lt-big, and Lex arity checks.
std::vector<Diagnostic> validate_precedence(const Problem& p);

}  // namespace cpo
