#include "cpo/term.hpp"

#include <algorithm>
#include <unordered_set>

#include "cpo/error.hpp"

namespace cpo {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool var_less(const TermPtr& a, const TermPtr& b) {
    if (a->name() != b->name()) return a->name() < b->name();
    return a->type()->str() < b->type()->str();
}

bool same_var(const Term& a, const Term& b) { return a.name() == b.name() && type_eq(a.type(), b.type()); }

}  // namespace

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::Syntax: return "Syntax";
        case ErrorCode::Duplicate: return "Duplicate";
        case ErrorCode::UnknownSort: return "UnknownSort";
        case ErrorCode::UnknownSymbol: return "UnknownSymbol";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::IllTyped: return "IllTyped";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::Shadowing: return "Shadowing";
        case ErrorCode::InvalidDeclaration: return "InvalidDeclaration";
        case ErrorCode::SpaceTooLarge: return "SpaceTooLarge";
        case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    }
    return "Unknown";
}

void Term::finish() {
    std::size_t h = mix(0x3100 + static_cast<std::size_t>(kind_), 0);
    switch (kind_) {
        case TermKind::Var:
            h = mix(mix(h, std::hash<std::string>{}(name_)), type_->hash());
            max_fresh_ = fresh_index(name_);
            break;
        case TermKind::BVar:
            h = mix(h, static_cast<std::size_t>(index_));
            loose_ = index_ + 1;
            break;
        case TermKind::Fun:
            h = mix(h, std::hash<std::string>{}(name_));
            break;
        case TermKind::App:
            break;
        case TermKind::Lam:
            h = mix(h, binder_->hash());
            break;
    }
    int hmax = -1;
    for (const auto& a : args_) {
        h = mix(h, a->hash());
        size_ += a->size();
        hmax = std::max(hmax, a->height());
        max_fresh_ = std::max(max_fresh_, a->max_fresh());
        int l = a->loose();
        if (kind_ == TermKind::Lam) l = std::max(0, l - 1);
        loose_ = std::max(loose_, l);
    }
    height_ = args_.empty() ? 0 : 1 + hmax;
    hash_ = h;
    if (kind_ != TermKind::Var) finish_fv();
}

void Term::finish_fv() {
    static const auto empty = std::make_shared<const VarSet>();
    fv_ = empty;
    for (const auto& a : args_) {
        if (a->is_var()) {
            if (fv_->contains(a)) continue;
            VarSet grown = *fv_;
            grown.insert(a);
            fv_ = std::make_shared<const VarSet>(std::move(grown));
        } else if (a->fv_ != fv_ && !a->fv_->subset_of(*fv_)) {
            if (fv_->subset_of(*a->fv_)) {
                fv_ = a->fv_;
                continue;
            }
            VarSet grown = *fv_;
            for (const auto& v : *a->fv_) grown.insert(v);
            fv_ = std::make_shared<const VarSet>(std::move(grown));
        }
    }
}

TermPtr Term::var(std::string name, TypePtr type) {
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = TermKind::Var;
    t->name_ = std::move(name);
    t->type_ = std::move(type);
    t->finish();
    return t;
}

TermPtr Term::bvar(int index, TypePtr type) {
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = TermKind::BVar;
    t->index_ = index;
    t->type_ = std::move(type);
    t->finish();
    return t;
}

TermPtr Term::fun(std::string symbol, std::vector<TermPtr> args, TypePtr result) {
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = TermKind::Fun;
    t->name_ = std::move(symbol);
    t->args_ = std::move(args);
    t->type_ = std::move(result);
    t->finish();
    return t;
}

TermPtr Term::app(TermPtr fn, TermPtr arg) {
    const auto& ft = fn->type();
    if (!ft->is_arrow())
        throw Error(ErrorCode::IllTyped, "cannot apply a term of sort type " + ft->str());
    if (!type_eq(ft->domain(), arg->type()))
        throw Error(ErrorCode::IllTyped,
                    "argument mismatch: expected " + ft->domain()->str() + ", found " + arg->type()->str());
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = TermKind::App;
    t->type_ = ft->codomain();
    t->args_ = {std::move(fn), std::move(arg)};
    t->finish();
    return t;
}

TermPtr Term::lam_raw(std::string hint, TypePtr binder, TermPtr body) {
    auto t = std::shared_ptr<Term>(new Term());
    t->kind_ = TermKind::Lam;
    t->name_ = std::move(hint);
    t->type_ = Type::arrow(binder, body->type());
    t->binder_ = std::move(binder);
    t->args_ = {std::move(body)};
    t->finish();
    return t;
}

TermPtr Term::lam(const TermPtr& x, const TermPtr& body) {
    return lam_raw(x->name(), x->type(), abstract(body, x, 0));
}

bool alpha_eq(const Term& a, const Term& b) {
    if (&a == &b) return true;
    if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
    switch (a.kind()) {
        case TermKind::Var: return same_var(a, b);
        case TermKind::BVar: return a.index() == b.index();
        case TermKind::Fun:
            if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
            break;
        case TermKind::App: break;
        case TermKind::Lam:
            if (!type_eq(a.binder_type(), b.binder_type())) return false;
            break;
    }
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_eq(*a.args()[i], *b.args()[i])) return false;
    return true;
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    return alpha_eq(*a, *b);
}

// ---------------------------------------------------------------- VarSet

VarSet::VarSet(std::initializer_list<TermPtr> vars) {
    for (const auto& v : vars) insert(v);
}

bool VarSet::contains(const TermPtr& v) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v, var_less);
    return it != vars_.end() && same_var(**it, *v);
}

bool VarSet::contains_name(const std::string& name) const {
    return std::any_of(vars_.begin(), vars_.end(), [&](const TermPtr& v) { return v->name() == name; });
}

void VarSet::insert(const TermPtr& v) {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v, var_less);
    if (it != vars_.end() && same_var(**it, *v)) return;
    vars_.insert(it, v);
}

VarSet VarSet::with(const TermPtr& v) const {
    VarSet r = *this;
    r.insert(v);
    return r;
}

bool VarSet::subset_of(const VarSet& other) const {
    return std::all_of(vars_.begin(), vars_.end(), [&](const TermPtr& v) { return other.contains(v); });
}

int VarSet::max_fresh() const {
    int m = -1;
    for (const auto& v : vars_) m = std::max(m, v->max_fresh());
    return m;
}

std::size_t VarSet::hash() const {
    std::size_t h = 0x77;
    for (const auto& v : vars_) h = mix(h, v->hash());
    return h;
}

bool operator==(const VarSet& a, const VarSet& b) {
    if (a.vars_.size() != b.vars_.size()) return false;
    for (std::size_t i = 0; i < a.vars_.size(); ++i)
        if (!same_var(*a.vars_[i], *b.vars_[i])) return false;
    return true;
}

VarSet free_vars(const TermPtr& t) {
    if (t->is_var()) return VarSet{t};
    return *t->fv_;
}

std::string fresh_name(int k) { return "%" + std::to_string(k); }

int fresh_index(const std::string& name) {
    if (name.size() < 2 || name[0] != '%') return -1;
    int k = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9') return -1;
        k = k * 10 + (name[i] - '0');
    }
    return k;
}

TermPtr fresh_var(const TypePtr& type, const VarSet& avoid) {
    return Term::var(fresh_name(avoid.max_fresh() + 1), type);
}

// ---------------------------------------------------------- binder ops

namespace {

TermPtr rebuild(const TermPtr& t, std::vector<TermPtr> args) {
    switch (t->kind()) {
        case TermKind::Fun: return Term::fun(t->name(), std::move(args), t->type());
        case TermKind::App: return Term::app(std::move(args[0]), std::move(args[1]));
        case TermKind::Lam: return Term::lam_raw(t->name(), t->binder_type(), std::move(args[0]));
        default: return t;
    }
}

TermPtr instantiate_at(const TermPtr& t, const TermPtr& r, int depth) {
    if (t->loose() <= depth) return t;
    if (t->kind() == TermKind::BVar) {
        if (t->index() == depth) return r;
        return Term::bvar(t->index() - 1, t->type());
    }
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    int d = t->is_lam() ? depth + 1 : depth;
    for (const auto& a : t->args()) args.push_back(instantiate_at(a, r, d));
    return rebuild(t, std::move(args));
}

bool mentions_var(const TermPtr& t, const TermPtr& x) {
    if (t->is_var()) return same_var(*t, *x);
    return std::any_of(t->args().begin(), t->args().end(), [&](const TermPtr& a) { return mentions_var(a, x); });
}

TermPtr abstract_at(const TermPtr& t, const TermPtr& x, int depth) {
    if (t->kind() == TermKind::Var) return same_var(*t, *x) ? Term::bvar(depth, t->type()) : t;
    if (t->kind() == TermKind::BVar) return t->index() >= depth ? Term::bvar(t->index() + 1, t->type()) : t;
    if (t->loose() <= depth && !mentions_var(t, x)) return t;
    std::vector<TermPtr> args;
    int d = t->is_lam() ? depth + 1 : depth;
    for (const auto& a : t->args()) args.push_back(abstract_at(a, x, d));
    return rebuild(t, std::move(args));
}

TermPtr shift_at(const TermPtr& t, int depth) {
    if (t->loose() <= depth) return t;
    if (t->kind() == TermKind::BVar) return t->index() > depth ? Term::bvar(t->index() - 1, t->type()) : t;
    std::vector<TermPtr> args;
    int d = t->is_lam() ? depth + 1 : depth;
    for (const auto& a : t->args()) args.push_back(shift_at(a, d));
    return rebuild(t, std::move(args));
}

bool loose_at(const TermPtr& t, int i) {
    if (t->loose() <= i) return false;
    if (t->kind() == TermKind::BVar) return t->index() == i;
    int d = t->is_lam() ? i + 1 : i;
    return std::any_of(t->args().begin(), t->args().end(), [&](const TermPtr& a) { return loose_at(a, d); });
}

}  // namespace

TermPtr instantiate(const TermPtr& body, const TermPtr& replacement) { return instantiate_at(body, replacement, 0); }

TermPtr abstract(const TermPtr& t, const TermPtr& x, int depth) { return abstract_at(t, x, depth); }

TermPtr shift_down(const TermPtr& t) { return shift_at(t, 0); }

bool has_loose(const TermPtr& t, int i) { return loose_at(t, i); }

// -------------------------------------------------------- substitution

Substitution::Substitution(std::initializer_list<std::pair<TermPtr, TermPtr>> bindings) {
    for (const auto& [x, t] : bindings) bind(x, t);
}

void Substitution::bind(const TermPtr& x, const TermPtr& t) {
    if (!type_eq(x->type(), t->type()))
        throw Error(ErrorCode::IllTyped, "substitution for " + x->name() + " changes its type");
    for (auto& [k, v] : map_)
        if (same_var(*k, *x)) {
            v = t;
            return;
        }
    if (alpha_eq(x, t)) return;
    map_.emplace_back(x, t);
}

const TermPtr* Substitution::find(const TermPtr& x) const {
    for (const auto& [k, v] : map_)
        if (same_var(*k, *x)) return &v;
    return nullptr;
}

VarSet Substitution::domain() const {
    VarSet d;
    for (const auto& [k, v] : map_)
        if (!alpha_eq(k, v)) d.insert(k);
    return d;
}

VarSet Substitution::range_vars() const {
    VarSet r;
    for (const auto& [k, v] : map_)
        if (!alpha_eq(k, v))
            for (const auto& y : free_vars(v)) r.insert(y);
    return r;
}

bool Substitution::away_from(const VarSet& x) const {
    for (const auto& v : domain())
        if (x.contains(v)) return false;
    for (const auto& v : range_vars())
        if (x.contains(v)) return false;
    return true;
}

TermPtr substitute(const TermPtr& t, const Substitution& s) {
    if (s.empty()) return t;
    if (t->is_var()) {
        const TermPtr* r = s.find(t);
        return r ? *r : t;
    }
    if (t->args().empty()) return t;
    std::vector<TermPtr> args;
    bool changed = false;
    for (const auto& a : t->args()) {
        args.push_back(substitute(a, s));
        changed = changed || args.back() != a;
    }
    return changed ? rebuild(t, std::move(args)) : t;
}

// --------------------------------------------------------------- keys

namespace {
void key_of(const Term& t, std::string& out) {
    switch (t.kind()) {
        case TermKind::Var:
            out += "v:";
            out += t.name();
            out += ':';
            out += t.type()->str();
            out += ';';
            return;
        case TermKind::BVar:
            out += "#" + std::to_string(t.index()) + ";";
            return;
        case TermKind::Fun:
            out += "f:" + t.name() + "(";
            break;
        case TermKind::App: out += "@("; break;
        case TermKind::Lam: out += "L:" + t.binder_type()->str() + "("; break;
    }
    for (const auto& a : t.args()) key_of(*a, out);
    out += ")";
}
}  // namespace

std::string alpha_canonical(const TermPtr& t, const VarSet& /*rigid*/) {
    // Free names are kept verbatim, so names in `rigid` are rigid already.
    std::string out;
    key_of(*t, out);
    return out;
}

void for_each_subterm(const TermPtr& t, const std::function<void(const TermPtr&)>& f) {
    f(t);
    for (const auto& a : t->args()) for_each_subterm(a, f);
}

std::vector<TermPtr> closed_subterms(const TermPtr& t) {
    std::vector<TermPtr> out;
    std::unordered_set<TermPtr, TermHash, TermAlphaEq> seen;
    for_each_subterm(t, [&](const TermPtr& u) {
        if (u->loose() == 0 && seen.insert(u).second) out.push_back(u);
    });
    return out;
}

std::pair<TermPtr, std::vector<TermPtr>> app_spine(const TermPtr& t) {
    std::vector<TermPtr> args;
    TermPtr h = t;
    while (h->is_app()) {
        args.push_back(h->arg());
        h = h->fn();
    }
    std::reverse(args.begin(), args.end());
    return {h, args};
}

}  // namespace cpo
