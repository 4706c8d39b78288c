#include "cpo/signature.hpp"

#include <algorithm>
#include <unordered_map>

namespace cpo {

std::string Status::str() const {
    if (is_mul()) return "mul";
    return n > 0 ? "lex(" + std::to_string(n) + ")" : "lex";
}

// ---------------------------------------------------------------- sorts

void SortPrecedence::add_sort(const std::string& name) {
    if (parent_.count(name)) return;
    names_.push_back(name);
    parent_[name] = name;
}

bool SortPrecedence::has_sort(const std::string& name) const { return parent_.count(name) > 0; }

std::string SortPrecedence::find(const std::string& n) const {
    std::string cur = n;
    for (;;) {
        auto it = parent_.find(cur);
        if (it == parent_.end() || it->second == cur) return cur;
        cur = it->second;
    }
}

void SortPrecedence::identify(const std::string& a, const std::string& b) {
    idents_.emplace_back(a, b);
    std::string ra = find(a), rb = find(b);
    if (ra == rb) return;
    // The earlier declared name becomes the representative.
    auto pa = std::find(names_.begin(), names_.end(), ra);
    auto pb = std::find(names_.begin(), names_.end(), rb);
    if (pa < pb)
        parent_[rb] = ra;
    else
        parent_[ra] = rb;
}

void SortPrecedence::add_gt(const std::string& a, const std::string& b) { edges_.emplace_back(a, b); }

const std::string& SortPrecedence::canonical(const std::string& name) const {
    std::string r = find(name);
    return parent_.find(r)->first;
}

void SortPrecedence::close() {
    closure_.clear();
    for (const auto& [a, b] : edges_) closure_.emplace(find(a), find(b));
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<std::string, std::string>> add;
        for (const auto& [a, b] : closure_)
            for (auto it = closure_.lower_bound({b, ""}); it != closure_.end() && it->first == b; ++it)
                if (!closure_.count({a, it->second})) add.emplace_back(a, it->second);
        for (auto& e : add) changed = closure_.insert(e).second || changed;
    }
    for (const auto& [a, b] : closure_)
        if (a == b) throw Error(ErrorCode::InvalidDeclaration, "sort precedence is cyclic at " + a);
}

bool SortPrecedence::gt(const std::string& a, const std::string& b) const {
    return closure_.count({find(a), find(b)}) > 0;
}

std::vector<std::string> SortPrecedence::sorts() const {
    std::vector<std::string> out;
    for (const auto& n : names_)
        if (find(n) == n) out.push_back(n);
    return out;
}

// ----------------------------------------------------------- precedence

void Precedence::add_symbol(const std::string& f) {
    if (parent_.count(f)) return;
    symbols_.push_back(f);
    parent_[f] = f;
}

std::string Precedence::find(const std::string& f) const {
    std::string cur = f;
    for (;;) {
        auto it = parent_.find(cur);
        if (it == parent_.end() || it->second == cur) return cur;
        cur = it->second;
    }
}

void Precedence::add_eq(const std::string& f, const std::string& g) {
    add_symbol(f);
    add_symbol(g);
    mentioned_.insert(f);
    mentioned_.insert(g);
    eq_edges_.emplace_back(f, g);
    std::string rf = find(f), rg = find(g);
    if (rf == rg) return;
    if (rg < rf) std::swap(rf, rg);
    parent_[rg] = rf;
}

void Precedence::add_gt(const std::string& f, const std::string& g) {
    add_symbol(f);
    add_symbol(g);
    mentioned_.insert(f);
    mentioned_.insert(g);
    gt_edges_.emplace_back(f, g);
}

void Precedence::close() {
    closure_.clear();
    for (const auto& [a, b] : gt_edges_) closure_.emplace(find(a), find(b));
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<std::string, std::string>> add;
        for (const auto& [a, b] : closure_)
            for (auto it = closure_.lower_bound({b, ""}); it != closure_.end() && it->first == b; ++it)
                if (!closure_.count({a, it->second})) add.emplace_back(a, it->second);
        for (auto& e : add) changed = closure_.insert(e).second || changed;
    }
    for (const auto& [a, b] : closure_)
        if (a == b) throw Error(ErrorCode::InvalidDeclaration, "precedence is cyclic at " + a);
}

bool Precedence::eq(const std::string& f, const std::string& g) const { return f == g || find(f) == find(g); }

bool Precedence::gt(const std::string& f, const std::string& g) const {
    return closure_.count({find(f), find(g)}) > 0;
}

const std::string& Precedence::representative(const std::string& f) const {
    auto it = parent_.find(find(f));
    static const std::string none;
    return it == parent_.end() ? none : it->first;
}

std::vector<std::string> Precedence::class_of(const std::string& f) const {
    std::vector<std::string> out;
    std::string r = find(f);
    for (const auto& s : symbols_)
        if (find(s) == r) out.push_back(s);
    if (out.empty()) out.push_back(f);
    std::sort(out.begin(), out.end());
    return out;
}

// -------------------------------------------------------------- problem

std::vector<TermPtr> Rule::chain() const {
    std::vector<TermPtr> out{lhs};
    out.insert(out.end(), via.begin(), via.end());
    out.push_back(rhs);
    return out;
}

void Problem::reindex() {
    index_.clear();
    for (std::size_t i = 0; i < symbols.size(); ++i) index_[symbols[i].name] = i;
}

const SymbolDecl* Problem::symbol(const std::string& name) const {
    auto it = index_.find(name);
    if (it != index_.end() && it->second < symbols.size() && symbols[it->second].name == name)
        return &symbols[it->second];
    for (const auto& s : symbols)
        if (s.name == name) return &s;
    return nullptr;
}

SymbolDecl* Problem::symbol(const std::string& name) {
    return const_cast<SymbolDecl*>(static_cast<const Problem*>(this)->symbol(name));
}

const VarDecl* Problem::var(const std::string& name) const {
    for (const auto& v : vars)
        if (v.name == name) return &v;
    return nullptr;
}

TermPtr make_fun(const SymbolDecl& f, std::vector<TermPtr> args) {
    if (static_cast<int>(args.size()) != f.arity)
        throw Error(ErrorCode::ArityMismatch, f.name + " expects " + std::to_string(f.arity) + " arguments, got " +
                                                  std::to_string(args.size()));
    TypePtr t = f.type;
    for (const auto& a : args) {
        if (!type_eq(t->domain(), a->type()))
            throw Error(ErrorCode::IllTyped, "argument of " + f.name + ": expected " + t->domain()->str() +
                                                 ", found " + a->type()->str());
        t = t->codomain();
    }
    return Term::fun(f.name, std::move(args), t);
}

namespace {
// Locally closed subterms are typed once per node, so shared subterms cost
// nothing after the first visit.
using TypeMemo = std::unordered_map<const Term*, TypePtr>;

TypePtr type_of_at(const Problem& p, const VarContext& ctx, const TermPtr& t, std::vector<TypePtr>& bound,
                   TypeMemo& memo);

TypePtr type_of_node(const Problem& p, const VarContext& ctx, const TermPtr& t, std::vector<TypePtr>& bound,
                     TypeMemo& memo) {
    switch (t->kind()) {
        case TermKind::Var: {
            auto it = ctx.find(t->name());
            if (it == ctx.end()) throw Error(ErrorCode::UnknownVariable, "unknown variable " + t->name());
            if (!type_eq(it->second, t->type()))
                throw Error(ErrorCode::IllTyped, "variable " + t->name() + " used at type " + t->type()->str() +
                                                     ", declared " + it->second->str());
            return it->second;
        }
        case TermKind::BVar: {
            int i = t->index();
            if (i >= static_cast<int>(bound.size()))
                throw Error(ErrorCode::IllTyped, "dangling bound variable");
            return bound[bound.size() - 1 - i];
        }
        case TermKind::Fun: {
            const SymbolDecl* f = p.symbol(t->name());
            if (!f) throw Error(ErrorCode::UnknownSymbol, "unknown symbol " + t->name());
            if (static_cast<int>(t->args().size()) != f->arity)
                throw Error(ErrorCode::ArityMismatch, f->name + " expects " + std::to_string(f->arity) + " arguments");
            TypePtr ty = f->type;
            for (const auto& a : t->args()) {
                TypePtr at = type_of_at(p, ctx, a, bound, memo);
                if (!type_eq(ty->domain(), at))
                    throw Error(ErrorCode::IllTyped, "argument of " + f->name + ": expected " + ty->domain()->str() +
                                                         ", found " + at->str());
                ty = ty->codomain();
            }
            return ty;
        }
        case TermKind::App: {
            TypePtr ft = type_of_at(p, ctx, t->fn(), bound, memo);
            TypePtr at = type_of_at(p, ctx, t->arg(), bound, memo);
            if (!ft->is_arrow()) throw Error(ErrorCode::IllTyped, "applying a term of type " + ft->str());
            if (!type_eq(ft->domain(), at))
                throw Error(ErrorCode::IllTyped,
                            "application: expected " + ft->domain()->str() + ", found " + at->str());
            return ft->codomain();
        }
        case TermKind::Lam: {
            bound.push_back(t->binder_type());
            TypePtr bt = type_of_at(p, ctx, t->body(), bound, memo);
            bound.pop_back();
            return Type::arrow(t->binder_type(), bt);
        }
    }
    return nullptr;
}

TypePtr type_of_at(const Problem& p, const VarContext& ctx, const TermPtr& t, std::vector<TypePtr>& bound,
                   TypeMemo& memo) {
    if (t->loose() > 0) return type_of_node(p, ctx, t, bound, memo);
    auto it = memo.find(t.get());
    if (it != memo.end()) return it->second;
    TypePtr ty = type_of_node(p, ctx, t, bound, memo);
    memo.emplace(t.get(), ty);
    return ty;
}
}  // namespace

TypePtr type_of(const Problem& p, const VarContext& ctx, const TermPtr& t) {
    std::vector<TypePtr> bound;
    TypeMemo memo;
    return type_of_at(p, ctx, t, bound, memo);
}

}  // namespace cpo
