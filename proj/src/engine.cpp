#include "cpo/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "cpo/printer.hpp"

namespace cpo {

// ------------------------------------------------------------- names

namespace {

const char* const kRelaxNames[kRelaxCount] = {
    "FbSub-addX",          "FbSub-dropType",      "FbEq-stat-addX",      "FbEqMul-dropType",
    "FbEqLex-dropType",    "AppSub-right-addX",   "AppSub-right-dropType", "AppEq-left-dropType",
    "AppEq-right-dropType", "AppLam-addX",        "LamSub-dropType",     "LamNeq-addX",
    "LamNeq-dropTypeGuard", "FbApp-transitive",
};

}  // namespace

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Core: return "core";
        case Mode::Accessible: return "accessible";
        case Mode::Full: return "full";
    }
    return "full";
}

std::optional<Mode> parse_mode(const std::string& s) {
    if (s == "core") return Mode::Core;
    if (s == "accessible") return Mode::Accessible;
    if (s == "full") return Mode::Full;
    return std::nullopt;
}

const char* relax_name(Relax r) { return kRelaxNames[static_cast<int>(r)]; }

std::optional<Relax> parse_relax(const std::string& s) {
    for (int i = 0; i < kRelaxCount; ++i)
        if (s == kRelaxNames[i]) return static_cast<Relax>(i);
    return std::nullopt;
}

std::vector<Relax> EngineConfig::relax_list() const {
    std::vector<Relax> out;
    for (int i = 0; i < kRelaxCount; ++i)
        if (has(static_cast<Relax>(i))) out.push_back(static_cast<Relax>(i));
    return out;
}

const char* rel_name(Rel r) {
    switch (r) {
        case Rel::Gt: return "gt";
        case Rel::GtTyped: return "gt-typed";
        case Rel::Ge: return "ge";
        case Rel::GeTyped: return "ge-typed";
        case Rel::Plus: return "gt-plus";
    }
    return "gt";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Proved: return "oriented";
        case Verdict::Failed: return "failed";
        case Verdict::Unknown: return "unknown";
    }
    return "failed";
}

namespace {

const char* rel_symbol(Rel r) {
    switch (r) {
        case Rel::Gt: return ">";
        case Rel::GtTyped: return ">t";
        case Rel::Ge: return ">=";
        case Rel::GeTyped: return ">=t";
        case Rel::Plus: return ">+";
    }
    return ">";
}

std::string show_goal(const Goal& g) {
    std::string out = print_term(g.lhs) + " " + rel_symbol(g.rel);
    if (!g.x.empty()) out += print_varset(g.x);
    return out + " " + print_term(g.rhs);
}

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct GoalHash {
    std::size_t operator()(const Goal& g) const {
        return mix(mix(mix(g.x.hash(), g.lhs->hash()), g.rhs->hash()), static_cast<std::size_t>(g.rel));
    }
};

struct GoalEq {
    bool operator()(const Goal& a, const Goal& b) const {
        return a.rel == b.rel && alpha_eq(a.lhs, b.lhs) && alpha_eq(a.rhs, b.rhs) && a.x == b.x;
    }
};

struct Alt {
    Goal goal;
    int index = -1;
    TermPtr u, w;
};

struct Premise {
    std::vector<Alt> alts;
};

/// Status comparison attached to (Fb=)/(Fs=) and their relaxed variants.
struct StatusSpec {
    Status st;
    int depth = 0;  // lex bound
    std::vector<TermPtr> ts, us;
    VarSet dom_x;
    Rel dom_rel = Rel::GtTyped;
    bool with_struct = false;
    VarSet struct_x;
    bool lex_rest = false;  // optimized lex: premises for j > i follow
    VarSet rest_x;
    TermPtr lhs;
};

/// A rule instance with its premises, before any premise is proved.
struct Step {
    std::string rule;
    int branch = 0;
    std::vector<Premise> premises;
    std::optional<StatusSpec> status;
    TermPtr fresh;
    std::optional<Relax> relax;
    std::string blocked;
};

Premise single(Goal g) { return Premise{{Alt{std::move(g)}}}; }

VarSet goal_vars(const Goal& g) {
    VarSet avoid = g.x;
    for (const auto& v : free_vars(g.lhs)) avoid.insert(v);
    for (const auto& v : free_vars(g.rhs)) avoid.insert(v);
    return avoid;
}

/// Fresh variable for a binder rule: the binder's own name when unused in
/// the comparison, else the next reserved name.
TermPtr fresh_for(const Goal& g, const std::string& hint, const TypePtr& type) {
    VarSet avoid = goal_vars(g);
    if (!hint.empty() && hint[0] != '%' && !avoid.contains_name(hint)) return Term::var(hint, type);
    return fresh_var(type, avoid);
}

/// Greedy alpha-cancellation followed by direct domination.
template <class Dom>
std::optional<std::vector<StatusEntry>> status_core(const Status& st, int lex_depth, const std::vector<TermPtr>& ts,
                                                    const std::vector<TermPtr>& us, Dom&& dom) {
    std::vector<StatusEntry> out;
    if (st.is_lex()) {
        int bound = std::min({lex_depth, static_cast<int>(ts.size()), static_cast<int>(us.size())});
        for (int j = 0; j < bound; ++j) {
            if (alpha_eq(ts[j], us[j])) {
                out.push_back({StatusEntry::Kind::Cancel, j, j});
                continue;
            }
            auto e = dom(j, j);
            if (!e) return std::nullopt;
            out.push_back(std::move(*e));
            return out;
        }
        return std::nullopt;
    }
    std::vector<bool> used_t(ts.size(), false), used_u(us.size(), false);
    for (std::size_t j = 0; j < us.size(); ++j)
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (!used_t[i] && alpha_eq(ts[i], us[j])) {
                used_t[i] = used_u[j] = true;
                out.push_back({StatusEntry::Kind::Cancel, static_cast<int>(i), static_cast<int>(j)});
                break;
            }
    if (std::all_of(used_t.begin(), used_t.end(), [](bool b) { return b; })) return std::nullopt;
    for (std::size_t j = 0; j < us.size(); ++j) {
        if (used_u[j]) continue;
        bool found = false;
        for (std::size_t i = 0; i < ts.size() && !found; ++i) {
            if (used_t[i]) continue;
            auto e = dom(static_cast<int>(i), static_cast<int>(j));
            if (e) {
                out.push_back(std::move(*e));
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    return out;
}

}  // namespace

std::optional<std::vector<StatusEntry>> status_compare(const Status& st, int lex_depth,
                                                       const std::vector<TermPtr>& ts,
                                                       const std::vector<TermPtr>& us, const ElemRel& rel) {
    return status_core(st, lex_depth, ts, us, [&](int i, int j) -> std::optional<StatusEntry> {
        if (rel(i, j)) return StatusEntry{StatusEntry::Kind::Dom, i, j};
        return std::nullopt;
    });
}

// ------------------------------------------------------------ rules

namespace {

/// Generates the rule instances applicable to a ≻_X goal. Shared by the
/// prover and the checker so both see identical premises.
class RuleBook {
public:
    RuleBook(const EngineEnv& env, const EngineConfig& cfg) : env_(env), cfg_(cfg) {}

    const SymbolDecl* sym(const std::string& name) const {
        const SymbolDecl* f = env_.problem->symbol(name);
        if (!f) throw std::logic_error("undeclared symbol " + name);
        return f;
    }
    bool small(const SymbolDecl* f) const { return cfg_.mode == Mode::Full && f->small(); }
    bool ext() const { return cfg_.mode != Mode::Core; }

    std::vector<Step> steps(const Goal& g) const {
        std::vector<Step> out;
        const TermPtr& s = g.lhs;
        const TermPtr& v = g.rhs;
        switch (s->kind()) {
            case TermKind::Fun: {
                const SymbolDecl* f = sym(s->name());
                if (small(f))
                    small_steps(g, f, out);
                else
                    big_steps(g, f, out);
                break;
            }
            case TermKind::App: app_steps(g, out); break;
            case TermKind::Lam: lam_steps(g, out); break;
            default: break;
        }
        (void)v;
        return out;
    }

private:
    StatusSpec status_spec(const Goal& g, const SymbolDecl* f, Rel dom_rel, VarSet dom_x) const {
        StatusSpec sp;
        sp.st = f->status;
        sp.depth = f->lex_depth();
        sp.ts = g.lhs->args();
        sp.us = g.rhs->args();
        sp.dom_x = std::move(dom_x);
        sp.dom_rel = dom_rel;
        sp.with_struct = ext();
        sp.struct_x = g.x;
        sp.lhs = g.lhs;
        return sp;
    }

    void var_step(const Goal& g, const char* rule, std::vector<Step>& out) const {
        Step st{rule};
        if (!g.x.contains(g.rhs)) st.blocked = "variable not in X";
        out.push_back(std::move(st));
    }

    void big_steps(const Goal& g, const SymbolDecl* f, std::vector<Step>& out) const {
        const TermPtr& s = g.lhs;
        const TermPtr& v = g.rhs;
        const auto& ts = s->args();
        {
            Step st{"Fb-sub"};
            VarSet xs = cfg_.has(Relax::FbSubAddX) ? g.x : VarSet{};
            Rel rel = cfg_.has(Relax::FbSubDropType) ? Rel::Ge : Rel::GeTyped;
            if (cfg_.has(Relax::FbSubAddX) && !g.x.empty())
                st.relax = Relax::FbSubAddX;
            else if (cfg_.has(Relax::FbSubDropType))
                st.relax = Relax::FbSubDropType;
            Premise p;
            for (std::size_t i = 0; i < ts.size(); ++i) {
                if (!ext()) {
                    p.alts.push_back({Goal{xs, ts[i], v, rel}, static_cast<int>(i), ts[i], ts[i]});
                    continue;
                }
                for (const auto& u : env_.acc->basic_subterms(ts[i]))
                    for (const auto& w : env_.acc->acc_set(u))
                        p.alts.push_back({Goal{xs, w, v, rel}, static_cast<int>(i), u, w});
            }
            if (p.alts.empty())
                st.blocked = "no arguments";
            else
                st.premises.push_back(std::move(p));
            out.push_back(std::move(st));
        }
        if (v->is_fun()) {
            const SymbolDecl* g2 = sym(v->name());
            const auto& us = v->args();
            if (env_.problem->prec.eq(f->name, g2->name)) {
                Step st{"Fb-eq"};
                for (const auto& u : us) st.premises.push_back(single(Goal{g.x, s, u, Rel::Gt}));
                bool addx = cfg_.has(Relax::FbEqStatAddX);
                st.status = status_spec(g, f, Rel::GtTyped, addx ? g.x : VarSet{});
                if (addx && !g.x.empty()) st.relax = Relax::FbEqStatAddX;
                out.push_back(std::move(st));
                if (cfg_.has(Relax::FbEqMulDropType) && f->status.is_mul()) {
                    Step m{"Fb-eq-mul"};
                    m.status = status_spec(g, f, Rel::Gt, VarSet{});
                    m.relax = Relax::FbEqMulDropType;
                    out.push_back(std::move(m));
                }
                if (cfg_.has(Relax::FbEqLexDropType) && f->status.is_lex()) {
                    Step m{"Fb-eq-lex"};
                    m.status = status_spec(g, f, Rel::Gt, VarSet{});
                    m.status->lex_rest = true;
                    m.status->rest_x = g.x;
                    m.relax = Relax::FbEqLexDropType;
                    out.push_back(std::move(m));
                }
            } else {
                out.push_back(Step{"Fb-eq", 0, {}, {}, {}, {}, "precedence"});
            }
            Step gt{"Fb-gt"};
            if (env_.problem->prec.gt(f->name, g2->name))
                for (const auto& u : us) gt.premises.push_back(single(Goal{g.x, s, u, Rel::Gt}));
            else
                gt.blocked = "precedence";
            out.push_back(std::move(gt));
        } else if (v->is_app()) {
            Step st{"Fb-app"};
            Rel rel = cfg_.has(Relax::FbAppTransitive) ? Rel::Plus : Rel::Gt;
            if (rel == Rel::Plus) st.relax = Relax::FbAppTransitive;
            st.premises.push_back(single(Goal{g.x, s, v->fn(), rel}));
            st.premises.push_back(single(Goal{g.x, s, v->arg(), rel}));
            out.push_back(std::move(st));
        } else if (v->is_lam()) {
            Step st{"Fb-lam"};
            st.fresh = fresh_for(g, v->name(), v->binder_type());
            st.premises.push_back(single(Goal{g.x.with(st.fresh), s, instantiate(v->body(), st.fresh), Rel::Gt}));
            out.push_back(std::move(st));
        } else if (v->is_var()) {
            var_step(g, "Fb-var", out);
        }
    }

    void small_steps(const Goal& g, const SymbolDecl* f, std::vector<Step>& out) const {
        const TermPtr& s = g.lhs;
        const TermPtr& v = g.rhs;
        const auto& ts = s->args();
        {
            Step st{"Fs-sub"};
            Premise p;
            for (std::size_t i = 0; i < ts.size(); ++i)
                p.alts.push_back({Goal{VarSet{}, ts[i], v, Rel::GeTyped}, static_cast<int>(i), ts[i], ts[i]});
            if (p.alts.empty())
                st.blocked = "no arguments";
            else
                st.premises.push_back(std::move(p));
            out.push_back(std::move(st));
        }
        if (v->is_fun()) {
            const SymbolDecl* g2 = sym(v->name());
            const auto& us = v->args();
            Step eq{"Fs-eq"};
            if (env_.problem->prec.eq(f->name, g2->name)) {
                for (const auto& u : us) eq.premises.push_back(single(Goal{g.x, s, u, Rel::GtTyped}));
                eq.status = status_spec(g, f, Rel::GtTyped, VarSet{});
            } else {
                eq.blocked = "precedence";
            }
            out.push_back(std::move(eq));
            Step gt{"Fs-gt"};
            if (env_.problem->prec.gt(f->name, g2->name))
                for (const auto& u : us) gt.premises.push_back(single(Goal{g.x, s, u, Rel::GtTyped}));
            else
                gt.blocked = "precedence";
            out.push_back(std::move(gt));
        } else if (v->is_app()) {
            Step st{"Fs-app"};
            st.premises.push_back(single(Goal{g.x, s, v->fn(), Rel::GtTyped}));
            st.premises.push_back(single(Goal{g.x, s, v->arg(), Rel::GtTyped}));
            out.push_back(std::move(st));
        } else if (v->is_var()) {
            var_step(g, "Fs-var", out);
        }
    }

    void small_rhs_step(const Goal& g, const char* rule, std::vector<Step>& out) const {
        const TermPtr& v = g.rhs;
        if (!v->is_fun() || !small(sym(v->name()))) return;
        Step st{rule};
        for (const auto& a : v->args()) st.premises.push_back(single(Goal{g.x, g.lhs, a, Rel::GtTyped}));
        out.push_back(std::move(st));
    }

    void app_steps(const Goal& g, std::vector<Step>& out) const {
        const TermPtr& s = g.lhs;
        const TermPtr& v = g.rhs;
        const TermPtr& t = s->fn();
        const TermPtr& u = s->arg();
        if (t->is_lam()) {
            Step st{"@beta"};
            st.premises.push_back(single(Goal{g.x, instantiate(t->body(), u), v, Rel::Ge}));
            out.push_back(std::move(st));
        }
        {
            Step st{"@sub"};
            bool drop = cfg_.has(Relax::AppSubRightDropType);
            if (drop) st.relax = Relax::AppSubRightDropType;
            Premise p;
            p.alts.push_back({Goal{g.x, t, v, Rel::Ge}, 0, t, t});
            p.alts.push_back({Goal{g.x, u, v, drop ? Rel::Ge : Rel::GeTyped}, 1, u, u});
            st.premises.push_back(std::move(p));
            out.push_back(std::move(st));
        }
        if (v->is_app()) {
            const TermPtr& t2 = v->fn();
            const TermPtr& u2 = v->arg();
            Step same{"@eq", 0};
            if (alpha_eq(t, t2))
                same.premises.push_back(single(Goal{g.x, u, u2, Rel::Gt}));
            else
                same.blocked = "heads differ";
            out.push_back(std::move(same));
            Step st{"@eq", 1};
            bool left = cfg_.has(Relax::AppEqLeftDropType);
            bool right = cfg_.has(Relax::AppEqRightDropType);
            if (left)
                st.relax = Relax::AppEqLeftDropType;
            else if (right)
                st.relax = Relax::AppEqRightDropType;
            for (int k = 0; k < 2; ++k) {
                const TermPtr& w = k == 0 ? t2 : u2;
                bool drop = k == 0 ? left : right;
                Premise p;
                p.alts.push_back({Goal{g.x, t, w, Rel::GtTyped}, 0});
                p.alts.push_back({Goal{g.x, u, w, Rel::GeTyped}, 1});
                p.alts.push_back({Goal{g.x, s, w, drop ? Rel::Gt : Rel::GtTyped}, 2});
                st.premises.push_back(std::move(p));
            }
            out.push_back(std::move(st));
        } else if (v->is_lam()) {
            Step st{"@lam"};
            st.fresh = fresh_for(g, v->name(), v->binder_type());
            bool addx = cfg_.has(Relax::AppLamAddX);
            if (addx) st.relax = Relax::AppLamAddX;
            st.premises.push_back(
                single(Goal{addx ? g.x.with(st.fresh) : g.x, s, instantiate(v->body(), st.fresh), Rel::Gt}));
            out.push_back(std::move(st));
        } else if (v->is_var()) {
            var_step(g, "@var", out);
        }
        small_rhs_step(g, "@small", out);
    }

    void lam_steps(const Goal& g, std::vector<Step>& out) const {
        const TermPtr& s = g.lhs;
        const TermPtr& v = g.rhs;
        const TermPtr& body = s->body();
        if (body->is_app() && body->arg()->kind() == TermKind::BVar && body->arg()->index() == 0 &&
            !has_loose(body->fn(), 0)) {
            Step st{"lam-eta"};
            st.premises.push_back(single(Goal{g.x, shift_down(body->fn()), v, Rel::Ge}));
            out.push_back(std::move(st));
        }
        {
            Step st{"lam-sub"};
            st.fresh = fresh_for(g, s->name(), s->binder_type());
            bool drop = cfg_.has(Relax::LamSubDropType);
            if (drop) st.relax = Relax::LamSubDropType;
            st.premises.push_back(single(Goal{g.x, instantiate(body, st.fresh), v, drop ? Rel::Ge : Rel::GeTyped}));
            out.push_back(std::move(st));
        }
        if (v->is_lam()) {
            bool same_type = type_eq(s->binder_type(), v->binder_type());
            if (same_type) {
                Step st{"lam-eq"};
                st.fresh = fresh_for(g, s->name(), s->binder_type());
                st.premises.push_back(
                    single(Goal{g.x, instantiate(body, st.fresh), instantiate(v->body(), st.fresh), Rel::Gt}));
                out.push_back(std::move(st));
            }
            bool guard_off = cfg_.has(Relax::LamNeqDropTypeGuard);
            if (!same_type || guard_off) {
                Step st{"lam-neq"};
                st.fresh = fresh_for(g, v->name(), v->binder_type());
                bool addx = cfg_.has(Relax::LamNeqAddX);
                if (same_type)
                    st.relax = Relax::LamNeqDropTypeGuard;
                else if (addx)
                    st.relax = Relax::LamNeqAddX;
                st.premises.push_back(
                    single(Goal{addx ? g.x.with(st.fresh) : g.x, s, instantiate(v->body(), st.fresh), Rel::Gt}));
                out.push_back(std::move(st));
            } else {
                out.push_back(Step{"lam-neq", 0, {}, {}, {}, {}, "same binder type"});
            }
        } else if (v->is_var()) {
            var_step(g, "lam-var", out);
        }
        small_rhs_step(g, "lam-small", out);
    }

    EngineEnv env_;
    const EngineConfig& cfg_;
};

}  // namespace

// ----------------------------------------------------------- prover

struct Engine::Impl {
    Impl(const EngineEnv& env, const EngineConfig& cfg, EngineStats& stats)
        : env(env), cfg(cfg), book(env, cfg), stats(stats) {}

    EngineEnv env;
    const EngineConfig& cfg;
    RuleBook book;
    EngineStats& stats;
    std::unordered_map<Goal, Outcome, GoalHash, GoalEq> memo;

    bool type_ok(const Goal& g) const { return env.types->ge(g.lhs->type(), g.rhs->type()); }

    std::shared_ptr<Derivation> node(const Goal& g, std::string rule) {
        auto d = std::make_shared<Derivation>();
        d->goal = g;
        d->rule = std::move(rule);
        return d;
    }

    Outcome prove(const Goal& g, int depth) {
        ++stats.calls;
        stats.max_depth_seen = std::max(stats.max_depth_seen, depth);
        if ((g.rel == Rel::Ge || g.rel == Rel::GeTyped) && alpha_eq(g.lhs, g.rhs))
            return {Verdict::Proved, node(g, "Refl")};
        auto it = memo.find(g);
        if (it != memo.end()) {
            ++stats.memo_hits;
            return it->second;
        }
        if (cfg.max_depth && depth > *cfg.max_depth) return {Verdict::Unknown, nullptr};
        Outcome r = compute(g, depth);
        if (r.verdict != Verdict::Unknown) {
            memo.emplace(g, r);
            stats.memo_size = memo.size();
        }
        return r;
    }

    Outcome compute(const Goal& g, int depth) {
        switch (g.rel) {
            case Rel::Ge: return prove(Goal{g.x, g.lhs, g.rhs, Rel::Gt}, depth);
            case Rel::GeTyped: return prove(Goal{g.x, g.lhs, g.rhs, Rel::GtTyped}, depth);
            case Rel::GtTyped: {
                if (!type_ok(g)) return {Verdict::Failed, nullptr};
                Outcome r = prove(Goal{g.x, g.lhs, g.rhs, Rel::Gt}, depth);
                if (r.verdict != Verdict::Proved) return r;
                auto d = std::make_shared<Derivation>(*r.proof);
                d->goal.rel = Rel::GtTyped;
                return {Verdict::Proved, d};
            }
            case Rel::Plus: return prove_plus(g, depth);
            case Rel::Gt: break;
        }
        bool unknown = false;
        for (const Step& st : book.steps(g)) {
            if (!st.blocked.empty()) continue;
            Outcome r = run_step(g, st, depth);
            if (r.verdict == Verdict::Proved) return r;
            if (r.verdict == Verdict::Unknown) unknown = true;
        }
        return {unknown ? Verdict::Unknown : Verdict::Failed, nullptr};
    }

    Outcome prove_plus(const Goal& g, int depth) {
        Outcome direct = prove(Goal{g.x, g.lhs, g.rhs, Rel::Gt}, depth + 1);
        if (direct.verdict == Verdict::Proved) return direct;
        bool unknown = direct.verdict == Verdict::Unknown;
        for (const auto& m : closed_subterms(g.lhs)) {
            if (m == g.lhs) continue;
            Outcome a = prove(Goal{g.x, g.lhs, m, Rel::Gt}, depth + 1);
            if (a.verdict != Verdict::Proved) {
                unknown = unknown || a.verdict == Verdict::Unknown;
                continue;
            }
            Outcome b = prove(Goal{g.x, m, g.rhs, Rel::Plus}, depth + 1);
            if (b.verdict == Verdict::Proved) {
                auto d = node(g, "Trans");
                d->w = m;
                d->relax = Relax::FbAppTransitive;
                d->children = {a.proof, b.proof};
                return {Verdict::Proved, d};
            }
            unknown = unknown || b.verdict == Verdict::Unknown;
        }
        return {unknown ? Verdict::Unknown : Verdict::Failed, nullptr};
    }

    Outcome run_step(const Goal& g, const Step& st, int depth) {
        auto d = node(g, st.rule);
        d->branch = st.branch;
        d->fresh = st.fresh;
        d->relax = st.relax;
        bool unknown = false;
        for (const Premise& p : st.premises) {
            bool done = false;
            for (std::size_t k = 0; k < p.alts.size(); ++k) {
                Outcome r = prove(p.alts[k].goal, depth + 1);
                if (r.verdict == Verdict::Proved) {
                    d->picks.push_back(static_cast<int>(k));
                    d->children.push_back(r.proof);
                    if (p.alts.size() > 1 && p.alts[k].index >= 0 && st.premises.size() == 1) {
                        d->index = p.alts[k].index;
                        d->u = p.alts[k].u;
                        d->w = p.alts[k].w;
                    }
                    done = true;
                    break;
                }
                if (r.verdict == Verdict::Unknown) unknown = true;
            }
            if (!done) return {unknown ? Verdict::Unknown : Verdict::Failed, nullptr};
        }
        if (st.rule == "Fb-sub" || st.rule == "Fs-sub") {
            const Alt& a = st.premises[0].alts[static_cast<std::size_t>(d->picks[0])];
            d->index = a.index;
            d->u = a.u;
            d->w = a.w;
        }
        if (st.status) {
            bool st_unknown = false;
            auto entries = run_status(*st.status, depth, st_unknown);
            if (!entries) return {st_unknown ? Verdict::Unknown : Verdict::Failed, nullptr};
            d->pairing = std::move(*entries);
            if (st.status->lex_rest) {
                int i = d->pairing.back().i;
                for (std::size_t j = static_cast<std::size_t>(i) + 1; j < st.status->us.size(); ++j) {
                    Outcome r = prove(Goal{st.status->rest_x, st.status->lhs, st.status->us[j], Rel::Gt}, depth + 1);
                    if (r.verdict != Verdict::Proved) return {r.verdict, nullptr};
                    d->children.push_back(r.proof);
                }
            }
        }
        return {Verdict::Proved, d};
    }

    std::optional<std::vector<StatusEntry>> run_status(const StatusSpec& sp, int depth, bool& unknown) {
        auto dom = [&](int i, int j) -> std::optional<StatusEntry> {
            const TermPtr& ti = sp.ts[static_cast<std::size_t>(i)];
            const TermPtr& uj = sp.us[static_cast<std::size_t>(j)];
            Outcome r = prove(Goal{sp.dom_x, ti, uj, sp.dom_rel}, depth + 1);
            if (r.verdict == Verdict::Proved) return StatusEntry{StatusEntry::Kind::Dom, i, j, nullptr, {}, r.proof};
            if (r.verdict == Verdict::Unknown) unknown = true;
            if (!sp.with_struct) return std::nullopt;
            if (auto w = env.acc->struct_smaller(sp.struct_x, ti, uj)) {
                Outcome refl = prove(Goal{VarSet{}, uj, uj, Rel::GeTyped}, depth + 1);
                return StatusEntry{StatusEntry::Kind::StructDom, i, j, uj, *w, refl.proof};
            }
            for (auto& [wt, wit] : env.acc->struct_candidates(sp.struct_x, ti)) {
                Outcome q = prove(Goal{VarSet{}, wt, uj, Rel::GeTyped}, depth + 1);
                if (q.verdict == Verdict::Proved) return StatusEntry{StatusEntry::Kind::StructDom, i, j, wt, wit, q.proof};
                if (q.verdict == Verdict::Unknown) unknown = true;
            }
            return std::nullopt;
        };
        return status_core(sp.st, sp.depth, sp.ts, sp.us, dom);
    }

    std::vector<FrontierEntry> frontier(const Goal& root) {
        std::vector<FrontierEntry> out;
        Goal g = root;
        if (g.rel == Rel::GtTyped || g.rel == Rel::GeTyped) {
            if (!type_ok(g)) {
                out.push_back({"type-check", g.lhs->type()->str() + " is not >= " + g.rhs->type()->str()});
                return out;
            }
        }
        g.rel = Rel::Gt;
        for (const Step& st : book.steps(g)) {
            if (!st.blocked.empty()) {
                out.push_back({st.rule, st.blocked});
                continue;
            }
            std::string failed;
            for (const Premise& p : st.premises) {
                bool ok = false;
                for (const Alt& a : p.alts)
                    if (prove(a.goal, 1).verdict == Verdict::Proved) {
                        ok = true;
                        break;
                    }
                if (!ok) {
                    failed = p.alts.size() == 1 ? show_goal(p.alts[0].goal)
                                                : "none of " + std::to_string(p.alts.size()) + " alternatives, e.g. " +
                                                      show_goal(p.alts[0].goal);
                    break;
                }
            }
            if (failed.empty() && st.status) {
                bool unk = false;
                if (!run_status(*st.status, 1, unk)) failed = "status comparison";
            }
            if (failed.empty()) failed = "proved";
            out.push_back({st.rule, failed});
        }
        return out;
    }
};

Engine::Engine(const EngineEnv& env, EngineConfig cfg) : cfg_(cfg) {
    impl_ = std::make_unique<Impl>(env, cfg_, stats_);
}

Engine::~Engine() = default;

Outcome Engine::prove(const Goal& g) { return impl_->prove(g, 0); }

std::vector<FrontierEntry> Engine::frontier(const Goal& g) { return impl_->frontier(g); }

// ----------------------------------------------------------- checker

namespace {

class Checker {
public:
    Checker(const EngineEnv& env, const EngineConfig& cfg) : env_(env), cfg_(cfg), book_(env, cfg) {}

    CheckResult run(const DerivPtr& d) {
        CheckResult r;
        std::string reason = check(d, r.path);
        if (!reason.empty()) {
            r.ok = false;
            r.reason = reason;
        }
        return r;
    }

private:
    static bool satisfies(const Goal& expected, const Derivation& child) {
        const Goal& c = child.goal;
        if (!(c.x == expected.x) || !alpha_eq(c.lhs, expected.lhs) || !alpha_eq(c.rhs, expected.rhs)) return false;
        if (c.rel == expected.rel) return true;
        switch (expected.rel) {
            case Rel::Ge: return c.rel == Rel::Gt;
            case Rel::GeTyped: return c.rel == Rel::GtTyped;
            case Rel::Plus: return c.rel == Rel::Gt;
            default: return false;
        }
    }

    std::string check(const DerivPtr& d, std::string& path) {
        if (!d) return "missing derivation";
        auto it = done_.find(d.get());
        if (it != done_.end()) return it->second;
        std::string r = check_node(*d, path);
        done_.emplace(d.get(), r);
        return r;
    }

    std::string check_child(const Derivation& parent, std::size_t k, const Goal& expected, std::string& path) {
        if (k >= parent.children.size()) return "missing premise " + std::to_string(k);
        const DerivPtr& c = parent.children[k];
        if (!c) return "missing premise " + std::to_string(k);
        if (!satisfies(expected, *c)) return "premise " + std::to_string(k) + " proves " + show_goal(c->goal) +
                                               " instead of " + show_goal(expected);
        std::string sub = path.empty() ? std::to_string(k) : path + "." + std::to_string(k);
        std::string r = check(c, sub);
        if (!r.empty()) path = sub;
        return r;
    }

    std::string check_node(const Derivation& d, std::string& path) {
        const Goal& g = d.goal;
        if (d.rule == "Refl") {
            if (g.rel != Rel::Ge && g.rel != Rel::GeTyped) return "Refl on a strict goal";
            if (!alpha_eq(g.lhs, g.rhs)) return "Refl on distinct terms";
            return d.children.empty() ? "" : "Refl with premises";
        }
        if (g.rel == Rel::Ge || g.rel == Rel::GeTyped) return "non-reflexive node on a reflexive goal";
        if (!free_vars(g.rhs).subset_of(goal_lhs_vars(g))) return "free variables of the rhs escape lhs and X";
        if (g.rel == Rel::GtTyped && !env_.types->ge(g.lhs->type(), g.rhs->type()))
            return "type of lhs is not >= type of rhs";
        if (d.rule == "Trans") {
            if (g.rel != Rel::Plus) return "Trans outside a transitive premise";
            if (!cfg_.has(Relax::FbAppTransitive)) return "Trans needs FbApp-transitive";
            if (!d.w || d.w == g.lhs || alpha_eq(d.w, g.lhs)) return "Trans middle term is not a strict subterm";
            auto subs = closed_subterms(g.lhs);
            if (std::none_of(subs.begin(), subs.end(), [&](const TermPtr& m) { return alpha_eq(m, d.w); }))
                return "Trans middle term is not a subterm of the lhs";
            if (d.children.size() != 2) return "Trans needs two premises";
            std::string r = check_child(d, 0, Goal{g.x, g.lhs, d.w, Rel::Gt}, path);
            if (!r.empty()) return r;
            return check_child(d, 1, Goal{g.x, d.w, g.rhs, Rel::Plus}, path);
        }
        Goal base{g.x, g.lhs, g.rhs, Rel::Gt};
        std::vector<Step> steps = book_.steps(base);
        const Step* st = nullptr;
        for (const auto& s : steps)
            if (s.rule == d.rule && s.branch == d.branch) st = &s;
        if (!st) return "rule " + d.rule + " does not apply";
        if (!st->blocked.empty()) return "rule " + d.rule + " blocked: " + st->blocked;
        if (st->fresh) {
            if (!d.fresh || !alpha_eq(d.fresh, st->fresh)) return "fresh variable mismatch";
            if (goal_vars(g).contains_name(d.fresh->name())) return "variable is not fresh";
        }
        if (d.picks.size() != st->premises.size()) return "wrong number of premises";
        std::size_t extra = 0;
        if (st->status && st->status->lex_rest && !d.pairing.empty()) {
            int i = d.pairing.back().i;
            extra = st->status->us.size() - static_cast<std::size_t>(i) - 1;
        }
        if (d.children.size() != st->premises.size() + extra) return "wrong number of children";
        for (std::size_t k = 0; k < st->premises.size(); ++k) {
            int pick = d.picks[k];
            if (pick < 0 || pick >= static_cast<int>(st->premises[k].alts.size())) return "invalid alternative";
            std::string r = check_child(d, k, st->premises[k].alts[static_cast<std::size_t>(pick)].goal, path);
            if (!r.empty()) return r;
        }
        if (st->status) {
            std::string r = check_pairing(d, *st->status, path);
            if (!r.empty()) return r;
            if (st->status->lex_rest) {
                int i = d.pairing.back().i;
                for (std::size_t j = static_cast<std::size_t>(i) + 1; j < st->status->us.size(); ++j) {
                    std::size_t k = st->premises.size() + j - static_cast<std::size_t>(i) - 1;
                    r = check_child(d, k, Goal{st->status->rest_x, g.lhs, st->status->us[j], Rel::Gt}, path);
                    if (!r.empty()) return r;
                }
            }
        }
        return "";
    }

    VarSet goal_lhs_vars(const Goal& g) const {
        VarSet out = g.x;
        for (const auto& v : free_vars(g.lhs)) out.insert(v);
        return out;
    }

    std::string check_pairing(const Derivation& d, const StatusSpec& sp, std::string& path) {
        const auto& ps = d.pairing;
        int nt = static_cast<int>(sp.ts.size()), nu = static_cast<int>(sp.us.size());
        for (const auto& e : ps) {
            if (e.i < 0 || e.i >= nt || e.j < 0 || e.j >= nu) return "status entry out of range";
            const TermPtr& ti = sp.ts[static_cast<std::size_t>(e.i)];
            const TermPtr& uj = sp.us[static_cast<std::size_t>(e.j)];
            switch (e.kind) {
                case StatusEntry::Kind::Cancel:
                    if (!alpha_eq(ti, uj)) return "cancelled arguments differ";
                    break;
                case StatusEntry::Kind::Dom: {
                    Goal want{sp.dom_x, ti, uj, sp.dom_rel};
                    if (!e.proof || !satisfies(want, *e.proof)) return "status premise mismatch";
                    std::string r = check(e.proof, path);
                    if (!r.empty()) return r;
                    break;
                }
                case StatusEntry::Kind::StructDom: {
                    if (!sp.with_struct) return "structural step outside accessible mode";
                    if (!e.w || !env_.acc->check_struct(sp.struct_x, ti, e.w, e.witness))
                        return "invalid structural witness";
                    Goal want{VarSet{}, e.w, uj, Rel::GeTyped};
                    if (!e.proof || !satisfies(want, *e.proof)) return "structural premise mismatch";
                    std::string r = check(e.proof, path);
                    if (!r.empty()) return r;
                    break;
                }
            }
        }
        if (sp.st.is_lex()) {
            int bound = std::min({sp.depth, nt, nu});
            if (ps.empty()) return "empty lex witness";
            for (std::size_t k = 0; k < ps.size(); ++k) {
                const auto& e = ps[k];
                if (e.i != static_cast<int>(k) || e.j != static_cast<int>(k)) return "lex witness out of order";
                bool last = k + 1 == ps.size();
                if (last == (e.kind == StatusEntry::Kind::Cancel)) return "malformed lex witness";
            }
            if (static_cast<int>(ps.size()) > bound) return "lex position beyond bound";
            return "";
        }
        std::vector<int> t_use(static_cast<std::size_t>(nt), 0), u_use(static_cast<std::size_t>(nu), 0);
        std::vector<bool> t_cancel(static_cast<std::size_t>(nt), false);
        for (const auto& e : ps)
            if (e.kind == StatusEntry::Kind::Cancel) {
                if (t_cancel[static_cast<std::size_t>(e.i)] || u_use[static_cast<std::size_t>(e.j)])
                    return "overlapping cancellation";
                t_cancel[static_cast<std::size_t>(e.i)] = true;
                u_use[static_cast<std::size_t>(e.j)] = 1;
            }
        for (const auto& e : ps)
            if (e.kind != StatusEntry::Kind::Cancel) {
                if (t_cancel[static_cast<std::size_t>(e.i)]) return "dominating argument was cancelled";
                if (u_use[static_cast<std::size_t>(e.j)]) return "argument covered twice";
                u_use[static_cast<std::size_t>(e.j)] = 1;
            }
        if (std::all_of(t_cancel.begin(), t_cancel.end(), [](bool b) { return b; })) return "multiset remainder empty";
        if (std::any_of(u_use.begin(), u_use.end(), [](int b) { return b == 0; })) return "undominated argument";
        return "";
    }

    EngineEnv env_;
    const EngineConfig& cfg_;
    RuleBook book_;
    std::unordered_map<const Derivation*, std::string> done_;
};

}  // namespace

CheckResult check_derivation(const EngineEnv& env, const DerivPtr& d, const EngineConfig& cfg) {
    Checker c(env, cfg);
    return c.run(d);
}

}  // namespace cpo
