#pragma once

#include <string>

#include "cpo/term.hpp"

namespace cpo {

/// Concrete syntax of a term, as accepted by the problem parser: `f(a, b)`,
/// left-nested juxtaposition for application and `\x. t` for abstraction.
/// Bound names are the recorded hints, renamed only when they would clash.
std::string print_term(const TermPtr& t);

/// `{x, y}`
std::string print_varset(const VarSet& x);

}  // namespace cpo
