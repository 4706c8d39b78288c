#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cpo/accessibility.hpp"
#include "cpo/diagnostic.hpp"
#include "cpo/engine.hpp"
#include "cpo/signature.hpp"
#include "cpo/type_order.hpp"

namespace cpo {

/// A problem together with the orders and caches derived from it. The
/// problem must outlive the analysis.
class Analysis {
public:
    explicit Analysis(const Problem& p) : p_(&p), types_(p.sorts), acc_(p, types_) {}
    Analysis(const Analysis&) = delete;
    Analysis& operator=(const Analysis&) = delete;

    const Problem& problem() const { return *p_; }
    const TypeOrder& types() const { return types_; }
    const AccContext& acc() const { return acc_; }
    EngineEnv env() const { return {p_, &types_, &acc_}; }

private:
    const Problem* p_;
    TypeOrder types_;
    AccContext acc_;
};

/// Every validation finding: precedence classes, accessible arguments,
/// small-symbol conditions and the typing of rule terms.
std::vector<Diagnostic> validate_problem(const Analysis& a);

struct LinkReport {
    TermPtr from, to;
    Verdict verdict = Verdict::Failed;
    DerivPtr derivation;
    std::vector<FrontierEntry> frontier;
    EngineStats stats;
};

struct RuleReport {
    int index = 0;  // 1-based
    TermPtr lhs, rhs;
    Verdict verdict = Verdict::Failed;
    int failed_link = -1;
    std::vector<LinkReport> links;
};

struct Report {
    EngineConfig config;
    std::vector<Diagnostic> diagnostics;
    std::vector<RuleReport> rules;
    bool valid = true;
    EngineStats totals;
    double seconds = 0;  // not part of the machine-readable output

    bool terminating() const;
    /// "terminating by CPO", "not proved" or "invalid problem".
    std::string verdict_text() const;
    double memo_hit_rate() const;
};

/// Orients the chain lhs ≻τ m1 ≻τ ... ≻τ rhs link by link, each link in a
/// fresh engine session. Stops at the first link that is not proved.
RuleReport orient_rule(const Analysis& a, const Rule& r, int index, const EngineConfig& cfg);

/// Validates, then orients every rule unless validation failed. `jobs` > 1
/// orients rules on that many threads; the report does not depend on it.
Report orient_all(const Analysis& a, const EngineConfig& cfg, int jobs = 1);

}  // namespace cpo
