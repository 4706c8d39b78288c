#include "cpo/symbol_order.hpp"

#include <algorithm>
#include <set>

namespace cpo {

namespace {

PosSet prefixed(char c, const PosSet& s) {
    PosSet out;
    for (const auto& p : s) out.insert(c + p);
    return out;
}

PosSet unite(const PosSet& a, const PosSet& b) {
    PosSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

Diagnostic small_diag(const SymbolDecl& f, std::string code, std::string msg, std::string witness = {}) {
    Diagnostic d;
    d.module = "symbol_order";
    d.code = std::move(code);
    d.subject = f.name;
    d.message = std::move(msg);
    d.witness = std::move(witness);
    d.pos = f.pos;
    return d;
}

std::vector<TypePtr> arity_args(const SymbolDecl& f) {
    auto spine = f.type->spine();
    spine.resize(static_cast<std::size_t>(f.arity));
    return spine;
}

}  // namespace

CompPositions comp_positions(const std::string& a, const TypePtr& t) {
    CompPositions r;
    if (t->is_sort()) {
        if (t->sort_name() == a) r.cpos = {""};
        return r;
    }
    CompPositions u = comp_positions(a, t->domain());
    CompPositions v = comp_positions(a, t->codomain());
    PosSet v_lc = unite(v.lpos, v.cpos);
    r.spos = unite(prefixed('1', u.npos), prefixed('2', v.spos));
    r.npos = unite(prefixed('1', u.spos), prefixed('2', v_lc));
    r.cpos = r.npos;
    r.lpos = unite(r.cpos, unite(prefixed('1', unite(u.spos, u.npos)), prefixed('2', v_lc)));
    return r;
}

std::vector<Diagnostic> check_small_conditions(const SymbolDecl& f, const TypeOrder& ord) {
    std::vector<Diagnostic> out;
    TypePtr output = f.output();
    const std::string& a = output->target_sort();
    auto args = arity_args(f);
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string idx = std::to_string(i + 1);
        if (!ord.sort_compat(a, args[i], false)) {
            out.push_back(small_diag(f, output->is_sort() ? "SmallSortViolation" : "SmallArrowViolation",
                                     "argument " + idx + " of small symbol " + f.name + " has a sort above " + a));
            continue;
        }
        if (output->is_sort()) {
            PosSet s = comp_positions(a, args[i]).spos;
            if (!s.empty())
                out.push_back(small_diag(f, "SmallSortViolation",
                                         "argument " + idx + " of small symbol " + f.name + " has SPos_" + a +
                                             " nonempty",
                                         show_position(*s.begin())));
        } else if (!ord.ge_tw(output, args[i])) {
            out.push_back(small_diag(f, "SmallArrowViolation",
                                     "argument " + idx + " of small symbol " + f.name + " is not below " +
                                         output->str() + " in the tw ordering",
                                     idx));
        }
    }
    if (output->is_arrow() && !f.acc.empty())
        out.push_back(small_diag(f, "SmallAccNonempty",
                                 "small symbol " + f.name + " has arrow output type and accessible arguments"));
    return out;
}

std::vector<Eligibility> classify_small_candidates(const Problem& p, const TypeOrder& ord) {
    std::vector<Eligibility> out;
    for (const auto& f : p.symbols) {
        Eligibility e;
        e.symbol = f.name;
        TypePtr output = f.output();
        const std::string& a = output->target_sort();
        auto args = arity_args(f);
        if (output->is_sort()) {
            auto all = [&](auto pred) { return std::all_of(args.begin(), args.end(), pred); };
            auto compat = [&](const TypePtr& t) { return ord.sort_compat(a, t, false); };
            if (all([&](const TypePtr& t) { return compat(t) && t->order() <= 1; })) e.conditions.push_back("order<=1");
            if (all([&](const TypePtr& t) {
                    if (ord.sort_compat(a, t, true)) return true;
                    if (!t->is_arrow() && t->sort_name() != a) return false;
                    if (t->target_sort() != a) return false;
                    auto sp = t->spine();
                    return std::all_of(sp.begin(), sp.end(),
                                       [&](const TypePtr& u) { return ord.sort_compat(a, u, true); });
                }))
                e.conditions.push_back("strictly-positive");
            if (all([&](const TypePtr& t) {
                    return compat(t) && t->order() <= 2 && occurs_only_positively(a, t);
                }))
                e.conditions.push_back("order<=2-positive");
        }
        SymbolDecl as_small = f;
        as_small.size = SizeClass::Small;
        e.reasons = check_small_conditions(as_small, ord);
        e.eligible = e.reasons.empty();
        e.conditions.push_back("direct-check");
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<Diagnostic> validate_precedence(const Problem& p) {
    std::vector<Diagnostic> out;
    auto diag = [&](Severity sev, std::string code, std::string subject, std::string msg, std::string witness) {
        Diagnostic d;
        d.severity = sev;
        d.module = "symbol_order";
        d.code = std::move(code);
        d.subject = std::move(subject);
        d.message = std::move(msg);
        d.witness = std::move(witness);
        out.push_back(std::move(d));
    };
    for (const auto& f : p.symbols) {
        if (f.status.is_lex() && f.arity < 2)
            diag(Severity::Error, "LexArity", f.name, "lex status on " + f.name + " of arity " + std::to_string(f.arity),
                 "");
        else if (f.status.is_lex() && f.status.n != 0 && f.status.n < 2)
            diag(Severity::Error, "LexArity", f.name, "lex(n) needs n >= 2", "");
    }
    std::set<std::string> seen;
    for (const auto& f : p.symbols) {
        if (seen.count(f.name)) continue;
        auto cls = p.prec.class_of(f.name);
        for (const auto& g : cls) seen.insert(g);
        const SymbolDecl* first = nullptr;
        for (const auto& gname : cls) {
            const SymbolDecl* g = p.symbol(gname);
            if (!g) continue;
            if (!first) {
                first = g;
                continue;
            }
            if (g->size != first->size)
                diag(Severity::Error, "MixedSizeClass", first->name,
                     "equivalent symbols " + first->name + " and " + g->name + " differ in size class",
                     first->name + "," + g->name);
            if (g->status.kind != first->status.kind ||
                (g->status.is_lex() && g->lex_depth() != first->lex_depth()))
                diag(Severity::Error, "MixedStatusClass", first->name,
                     "equivalent symbols " + first->name + " and " + g->name + " have different statuses",
                     first->name + "," + g->name);
            else if (g->status.is_lex() && g->arity != first->arity)
                diag(Severity::Warning, "LexArityMismatch", first->name,
                     "lex class with unequal arities: " + first->name + " and " + g->name + "; compared up to the minimum",
                     first->name + "," + g->name);
        }
    }
    for (const auto& s : p.symbols) {
        if (!s.small()) continue;
        for (const auto& b : p.symbols) {
            if (b.small()) continue;
            if (p.prec.ge(s.name, b.name) && !p.prec.eq(s.name, b.name))
                diag(Severity::Error, "SmallGeBig", s.name, "small symbol " + s.name + " is above big symbol " + b.name,
                     s.name + "," + b.name);
        }
    }
    return out;
}

}  // namespace cpo
