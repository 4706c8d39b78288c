#include "cpo/orientation.hpp"

#include <atomic>
#include <chrono>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "cpo/printer.hpp"
#include "cpo/symbol_order.hpp"

namespace cpo {

namespace {

Diagnostic rule_diag(const Rule& r, int index, Severity sev, std::string code, std::string msg) {
    Diagnostic d;
    d.severity = sev;
    d.module = "orientation";
    d.code = std::move(code);
    d.subject = "rule " + std::to_string(index);
    d.message = std::move(msg);
    d.pos = r.pos;
    return d;
}

void check_rule(const Problem& p, const Rule& r, int index, std::vector<Diagnostic>& out) {
    VarContext ctx;
    for (const auto& v : p.vars) ctx[v.name] = v.type;
    for (const auto& t : r.chain()) {
        try {
            TypePtr ty = type_of(p, ctx, t);
            if (!type_eq(ty, t->type()))
                out.push_back(rule_diag(r, index, Severity::Error, "IllTyped",
                                        "term " + print_term(t) + " does not have its recorded type"));
        } catch (const Error& e) {
            out.push_back(rule_diag(r, index, Severity::Error, error_code_name(e.code()), e.what()));
        }
    }
    VarSet lhs_vars = free_vars(r.lhs);
    for (const auto& v : free_vars(r.rhs))
        if (!lhs_vars.contains(v)) {
            auto d = rule_diag(r, index, Severity::Warning, "FreeVariableEscape",
                               "cannot orient: variable " + v->name() + " of the rhs is not free in the lhs");
            d.witness = v->name();
            out.push_back(std::move(d));
        }
}

}  // namespace

std::vector<Diagnostic> validate_problem(const Analysis& a) {
    const Problem& p = a.problem();
    std::vector<Diagnostic> all = validate_precedence(p);
    for (const auto& f : p.symbols) {
        for (auto& d : a.acc().validate_acc(f)) all.push_back(std::move(d));
        if (f.small())
            for (auto& d : check_small_conditions(f, a.types())) all.push_back(std::move(d));
    }
    for (std::size_t i = 0; i < p.rules.size(); ++i) check_rule(p, p.rules[i], static_cast<int>(i) + 1, all);

    std::vector<Diagnostic> out;
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (auto& d : all)
        if (seen.emplace(d.code, d.subject, d.witness).second) out.push_back(std::move(d));
    return out;
}

RuleReport orient_rule(const Analysis& a, const Rule& r, int index, const EngineConfig& cfg) {
    RuleReport rep;
    rep.index = index;
    rep.lhs = r.lhs;
    rep.rhs = r.rhs;
    rep.verdict = Verdict::Proved;
    auto chain = r.chain();
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        LinkReport link;
        link.from = chain[k];
        link.to = chain[k + 1];
        Engine engine(a.env(), cfg);
        Goal g{VarSet{}, link.from, link.to, Rel::GtTyped};
        Outcome o = engine.prove(g);
        link.verdict = o.verdict;
        if (o.verdict == Verdict::Proved) {
            CheckResult c = check_derivation(a.env(), o.proof, cfg);
            if (!c.ok) throw std::logic_error("derivation does not replay at " + c.path + ": " + c.reason);
            if (cfg.trace) link.derivation = o.proof;
        } else {
            link.frontier = engine.frontier(g);
        }
        link.stats = engine.stats();
        Verdict v = link.verdict;
        rep.links.push_back(std::move(link));
        if (v != Verdict::Proved) {
            rep.verdict = v;
            rep.failed_link = static_cast<int>(k);
            break;
        }
    }
    return rep;
}

Report orient_all(const Analysis& a, const EngineConfig& cfg, int jobs) {
    auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.config = cfg;
    rep.diagnostics = validate_problem(a);
    rep.valid = !has_errors(rep.diagnostics);
    const auto& rules = a.problem().rules;
    if (rep.valid) {
        rep.rules.resize(rules.size());
        auto work = [&](std::size_t i) {
            rep.rules[i] = orient_rule(a, rules[i], static_cast<int>(i) + 1, cfg);
        };
        if (jobs <= 1 || rules.size() < 2) {
            for (std::size_t i = 0; i < rules.size(); ++i) work(i);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t)
                pool.emplace_back([&, t] {
                    try {
                        for (std::size_t i; (i = next++) < rules.size();) work(i);
                    } catch (...) {
                        errors[static_cast<std::size_t>(t)] = std::current_exception();
                    }
                });
            for (auto& th : pool) th.join();
            for (auto& e : errors)
                if (e) std::rethrow_exception(e);
        }
        for (const auto& r : rep.rules)
            for (const auto& l : r.links) {
                rep.totals.calls += l.stats.calls;
                rep.totals.memo_hits += l.stats.memo_hits;
                rep.totals.memo_size += l.stats.memo_size;
                rep.totals.max_depth_seen = std::max(rep.totals.max_depth_seen, l.stats.max_depth_seen);
            }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

bool Report::terminating() const {
    if (!valid) return false;
    for (const auto& r : rules)
        if (r.verdict != Verdict::Proved) return false;
    return true;
}

std::string Report::verdict_text() const {
    if (!valid) return "invalid problem";
    return terminating() ? "terminating by CPO" : "not proved";
}

double Report::memo_hit_rate() const {
    return totals.calls ? static_cast<double>(totals.memo_hits) / static_cast<double>(totals.calls) : 0.0;
}

}  // namespace cpo
