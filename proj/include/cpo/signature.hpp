#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cpo/error.hpp"
#include "cpo/term.hpp"
#include "cpo/types.hpp"

namespace cpo {

struct Status {
    enum class Kind { Mul, Lex };
    Kind kind = Kind::Mul;
    int n = 0;  // Lex only; 0 means "the symbol's arity"

    static Status mul() { return {}; }
    static Status lex(int n = 0) { return {Kind::Lex, n}; }
    bool is_mul() const { return kind == Kind::Mul; }
    bool is_lex() const { return kind == Kind::Lex; }
    std::string str() const;
    friend bool operator==(const Status&, const Status&) = default;
};

enum class SizeClass { Big, Small };

struct SymbolDecl {
    std::string name;
    TypePtr type;
    int arity = 0;
    Status status;
    SizeClass size = SizeClass::Big;
    std::vector<int> acc;  // 1-based, sorted, over the full uncurried spine
    bool status_pinned = false;
    bool size_pinned = false;
    SourcePos pos;

    bool small() const { return size == SizeClass::Small; }
    /// Type left after the declared arity arguments.
    TypePtr output() const { return drop_args(type, arity); }
    /// Lex depth actually used in comparisons.
    int lex_depth() const { return status.n > 0 ? status.n : arity; }
};

/// Strict order on canonical sort names, plus the identification map.
class SortPrecedence {
public:
    void add_sort(const std::string& name);
    bool has_sort(const std::string& name) const;
    /// Record `a = b`; both must be declared.
    void identify(const std::string& a, const std::string& b);
    void add_gt(const std::string& a, const std::string& b);
    /// Computes the transitive closure; throws InvalidDeclaration on a cycle.
    void close();

    const std::string& canonical(const std::string& name) const;
    /// A >_S B on canonical names.
    bool gt(const std::string& a, const std::string& b) const;
    /// Canonical sorts in declaration order.
    std::vector<std::string> sorts() const;
    /// Every declared name, in declaration order.
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::pair<std::string, std::string>>& gt_edges() const { return edges_; }
    const std::vector<std::pair<std::string, std::string>>& identifications() const { return idents_; }

private:
    std::string find(const std::string& n) const;

    std::vector<std::string> names_;
    std::map<std::string, std::string> parent_;
    std::vector<std::pair<std::string, std::string>> edges_;
    std::vector<std::pair<std::string, std::string>> idents_;
    std::set<std::pair<std::string, std::string>> closure_;
};

/// Quasi-order on symbols: equivalence classes plus a strict order on them.
class Precedence {
public:
    void add_symbol(const std::string& f);
    void add_eq(const std::string& f, const std::string& g);
    void add_gt(const std::string& f, const std::string& g);
    /// Transitive closure; throws InvalidDeclaration when the strict part
    /// is not irreflexive.
    void close();

    bool eq(const std::string& f, const std::string& g) const;
    bool gt(const std::string& f, const std::string& g) const;
    bool ge(const std::string& f, const std::string& g) const { return eq(f, g) || gt(f, g); }
    /// Symbols mentioned in some `prec` declaration.
    bool mentioned(const std::string& f) const { return mentioned_.count(f) > 0; }
    const std::string& representative(const std::string& f) const;
    /// Members of the class of `f`, sorted.
    std::vector<std::string> class_of(const std::string& f) const;
    const std::vector<std::pair<std::string, std::string>>& gt_edges() const { return gt_edges_; }
    const std::vector<std::pair<std::string, std::string>>& eq_edges() const { return eq_edges_; }

private:
    std::string find(const std::string& f) const;

    std::vector<std::string> symbols_;
    std::map<std::string, std::string> parent_;
    std::set<std::string> mentioned_;
    std::vector<std::pair<std::string, std::string>> gt_edges_;
    std::vector<std::pair<std::string, std::string>> eq_edges_;
    std::set<std::pair<std::string, std::string>> closure_;
};

struct VarDecl {
    std::string name;
    TypePtr type;
};

struct Rule {
    TermPtr lhs, rhs;
    std::vector<TermPtr> via;
    SourcePos pos;

    /// lhs, via..., rhs
    std::vector<TermPtr> chain() const;
};

/// A rewrite problem: signature, orders, variables and rules.
struct Problem {
    SortPrecedence sorts;
    std::vector<SymbolDecl> symbols;
    Precedence prec;
    std::vector<VarDecl> vars;
    std::vector<Rule> rules;

    const SymbolDecl* symbol(const std::string& name) const;
    SymbolDecl* symbol(const std::string& name);
    const VarDecl* var(const std::string& name) const;
    /// Rebuilds the name index; call after modifying `symbols`.
    void reindex();

private:
    std::unordered_map<std::string, std::size_t> index_;
};

using VarContext = std::map<std::string, TypePtr>;

/// Recomputes the type of `t`, checking every node against the problem's
/// declarations and `ctx`.
TypePtr type_of(const Problem& p, const VarContext& ctx, const TermPtr& t);

/// `f(args)` for a declared symbol, checking arity and argument types.
TermPtr make_fun(const SymbolDecl& f, std::vector<TermPtr> args);

}  // namespace cpo
