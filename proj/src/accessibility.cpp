#include "cpo/accessibility.hpp"

#include <algorithm>

namespace cpo {

namespace {

void push_unique(std::vector<TermPtr>& out, const TermPtr& t) {
    if (std::none_of(out.begin(), out.end(), [&](const TermPtr& u) { return alpha_eq(u, t); })) out.push_back(t);
}

bool in_tail(const std::vector<TermPtr>& xs, const TermPtr& t) {
    return std::any_of(xs.begin() + 1, xs.end(), [&](const TermPtr& u) { return alpha_eq(u, t); });
}

}  // namespace

std::set<std::string> compute_basic_sorts(const Problem& p, const TypeOrder& ord) {
    std::set<std::string> basic;
    auto sorts = p.sorts.sorts();
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& a : sorts) {
            if (basic.count(a)) continue;
            bool ok = true;
            for (const auto& b : sorts)
                if (ord.sort_gt(a, b) && !basic.count(b)) ok = false;
            for (const auto& f : p.symbols) {
                if (!ok) break;
                if (f.type->target_sort() != a) continue;
                auto spine = f.type->spine();
                for (int i : f.acc) {
                    if (i < 1 || i > static_cast<int>(spine.size())) continue;
                    const TypePtr& ti = spine[static_cast<std::size_t>(i - 1)];
                    if (ti->is_sort() && (ti->sort_name() == a || basic.count(ti->sort_name()))) continue;
                    ok = false;
                    break;
                }
            }
            if (ok) {
                basic.insert(a);
                changed = true;
            }
        }
    }
    return basic;
}

AccContext::AccContext(const Problem& p, const TypeOrder& ord) : p_(&p), ord_(&ord) {
    basic_ = compute_basic_sorts(p, ord);
}

std::vector<Diagnostic> AccContext::validate_acc(const SymbolDecl& f) const {
    std::vector<Diagnostic> out;
    auto diag = [&](std::string code, std::string msg, std::string witness) {
        Diagnostic d;
        d.module = "accessibility";
        d.code = std::move(code);
        d.subject = f.name;
        d.message = std::move(msg);
        d.witness = std::move(witness);
        d.pos = f.pos;
        out.push_back(std::move(d));
    };
    auto spine = f.type->spine();
    const std::string& a = f.type->target_sort();
    for (int i : f.acc) {
        std::string idx = std::to_string(i);
        if (i < 1 || i > static_cast<int>(spine.size())) {
            diag("AccIndexRange", "accessible argument " + idx + " of " + f.name + " is out of range", idx);
            continue;
        }
        const TypePtr& ti = spine[static_cast<std::size_t>(i - 1)];
        if (!ord_->sort_compat(a, ti, false)) {
            diag("AccSortViolation", "accessible argument " + idx + " of " + f.name + " mentions a sort above " + a,
                 idx);
            continue;
        }
        Positions ps = positions(ti, a);
        for (const auto& q : ps.of_sort)
            if (!ps.plus.count(q)) {
                diag("AccPositivityViolation",
                     a + " occurs negatively at position " + show_position(q) + " of argument " + idx + " of " + f.name,
                     show_position(q));
                break;
            }
    }
    if (f.small() && f.output()->is_arrow() && !f.acc.empty())
        diag("SmallAccNonempty", "small symbol " + f.name + " has arrow output type and accessible arguments", "");
    return out;
}

const std::vector<TermPtr>& AccContext::acc_set(const TermPtr& t) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = acc_cache_.find(t.get());
        if (it != acc_cache_.end()) return it->second.second;
    }
    std::vector<TermPtr> out{t};
    auto [head, extra] = app_spine(t);
    if (head->is_fun()) {
        const SymbolDecl* f = p_->symbol(head->name());
        if (f && !f->acc.empty() &&
            static_cast<int>(extra.size()) + f->arity == static_cast<int>(f->type->spine().size())) {
            std::vector<TermPtr> all = head->args();
            all.insert(all.end(), extra.begin(), extra.end());
            for (int i : f->acc) {
                if (i < 1 || i > static_cast<int>(all.size())) continue;
                for (const auto& u : acc_set(all[static_cast<std::size_t>(i - 1)])) push_unique(out, u);
            }
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    return acc_cache_.emplace(t.get(), std::make_pair(t, std::move(out))).first->second.second;
}

const std::vector<TermPtr>& AccContext::basic_subterms(const TermPtr& t) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = basic_cache_.find(t.get());
        if (it != basic_cache_.end()) return it->second.second;
    }
    std::vector<TermPtr> out{t};
    if (!basic_.empty())
        for (const auto& u : closed_subterms(t))
            if (u != t && u->type()->is_sort() && basic_.count(u->type()->sort_name())) push_unique(out, u);
    std::lock_guard<std::mutex> lock(mu_);
    return basic_cache_.emplace(t.get(), std::make_pair(t, std::move(out))).first->second.second;
}

std::optional<StructWitness> AccContext::struct_smaller(const VarSet& x, const TermPtr& t, const TermPtr& u) const {
    if (!t->type()->is_sort() || !type_eq(t->type(), u->type())) return std::nullopt;
    const std::string& a = t->type()->sort_name();
    const auto& acc = acc_set(t);
    if (acc.size() < 2) return std::nullopt;
    std::vector<TermPtr> xs;
    TermPtr cur = u;
    for (;;) {
        if (in_tail(acc, cur)) {
            std::reverse(xs.begin(), xs.end());
            return StructWitness{cur, xs};
        }
        if (!cur->is_app()) break;
        const TermPtr& arg = cur->arg();
        if (!arg->is_var() || !x.contains(arg) || !sort_absent(a, arg->type())) break;
        xs.push_back(arg);
        cur = cur->fn();
    }
    return std::nullopt;
}

std::vector<std::pair<TermPtr, StructWitness>> AccContext::struct_candidates(const VarSet& x, const TermPtr& t,
                                                                             std::size_t limit) const {
    std::vector<std::pair<TermPtr, StructWitness>> out;
    if (!t->type()->is_sort()) return out;
    const std::string& a = t->type()->sort_name();
    const auto& acc = acc_set(t);
    for (std::size_t k = 1; k < acc.size() && out.size() < limit; ++k) {
        const TermPtr& v = acc[k];
        if (v->type()->target_sort() != a) continue;
        auto doms = v->type()->spine();
        std::vector<std::vector<TermPtr>> choices;
        bool possible = true;
        for (const auto& d : doms) {
            std::vector<TermPtr> c;
            if (sort_absent(a, d))
                for (const auto& y : x)
                    if (type_eq(y->type(), d)) c.push_back(y);
            if (c.empty()) possible = false;
            choices.push_back(std::move(c));
        }
        if (!possible) continue;
        std::vector<std::size_t> idx(doms.size(), 0);
        for (;;) {
            TermPtr w = v;
            std::vector<TermPtr> xs;
            for (std::size_t i = 0; i < doms.size(); ++i) {
                xs.push_back(choices[i][idx[i]]);
                w = Term::app(w, xs.back());
            }
            out.emplace_back(w, StructWitness{v, xs});
            if (out.size() >= limit) break;
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    }
    return out;
}

bool AccContext::check_struct(const VarSet& x, const TermPtr& t, const TermPtr& u, const StructWitness& w) const {
    if (!w.v || !t->type()->is_sort() || !type_eq(t->type(), u->type())) return false;
    const std::string& a = t->type()->sort_name();
    if (!in_tail(acc_set(t), w.v)) return false;
    TermPtr built = w.v;
    for (const auto& y : w.xs) {
        if (!y->is_var() || !x.contains(y) || !sort_absent(a, y->type())) return false;
        if (!built->type()->is_arrow() || !type_eq(built->type()->domain(), y->type())) return false;
        built = Term::app(built, y);
    }
    return alpha_eq(built, u);
}

}  // namespace cpo
