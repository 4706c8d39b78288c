#pragma once

#include <string>

#include "cpo/orientation.hpp"
#include "cpo/signature.hpp"
#include "cpo/symbol_order.hpp"

namespace cpo {

/// Parses a problem file. Throws Error carrying the source position of the
/// first syntax or elaboration error.
Problem parse_problem(const std::string& text);

/// Problem file text that parses back to an equal problem.
std::string print_problem(const Problem& p);

struct RenderOptions {
    std::string name;  // problem name echoed in the output
    bool trace = false;
};

std::string render_text(const Report& r, const RenderOptions& opt);
/// Stable JSON document (no timing information), newline-terminated.
std::string render_json(const Report& r, const RenderOptions& opt);

std::string render_diagnostics_text(const std::vector<Diagnostic>& ds);
std::string render_diagnostics_json(const std::vector<Diagnostic>& ds, const std::string& name);

std::string render_classification_text(const std::vector<Eligibility>& es);
std::string render_classification_json(const std::vector<Eligibility>& es, const std::string& name);

}  // namespace cpo
