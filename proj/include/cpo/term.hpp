#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cpo/types.hpp"

namespace cpo {

class Term;
class VarSet;
using TermPtr = std::shared_ptr<const Term>;

enum class TermKind { Var, BVar, Fun, App, Lam };

/// Simply typed algebraic lambda-terms in locally nameless form.
///
/// Free variables are named (a variable is its name together with its
/// type); bound variables are de Bruijn indices. Hence two terms are
/// alpha-equivalent exactly when they are structurally equal, ignoring the
/// binder name hints kept for printing. Every node caches its type, hash,
/// height, free variables and the largest loose index it contains.
class Term {
public:
    static TermPtr var(std::string name, TypePtr type);
    static TermPtr bvar(int index, TypePtr type);
    /// `f(args)`; `result` is the type left after the arguments. The caller
    /// (usually the signature) guarantees argument types.
    static TermPtr fun(std::string symbol, std::vector<TermPtr> args, TypePtr result);
    /// Throws Error(IllTyped) on a domain mismatch.
    static TermPtr app(TermPtr fn, TermPtr arg);
    /// `\x. body` abstracting the free variable `x` (a Var term).
    static TermPtr lam(const TermPtr& x, const TermPtr& body);
    /// Lambda over a body already containing index 0 for the bound variable.
    static TermPtr lam_raw(std::string hint, TypePtr binder, TermPtr body);

    TermKind kind() const { return kind_; }
    bool is_var() const { return kind_ == TermKind::Var; }
    bool is_fun() const { return kind_ == TermKind::Fun; }
    bool is_app() const { return kind_ == TermKind::App; }
    bool is_lam() const { return kind_ == TermKind::Lam; }

    /// Var name, Fun symbol or Lam hint.
    const std::string& name() const { return name_; }
    const TypePtr& type() const { return type_; }
    const TypePtr& binder_type() const { return binder_; }
    int index() const { return index_; }
    const std::vector<TermPtr>& args() const { return args_; }
    const TermPtr& fn() const { return args_[0]; }
    const TermPtr& arg() const { return args_[1]; }
    const TermPtr& body() const { return args_[0]; }

    std::size_t hash() const { return hash_; }
    int height() const { return height_; }
    int size() const { return size_; }
    /// 0 when locally closed, else 1 + the largest loose index.
    int loose() const { return loose_; }
    /// Largest k such that the reserved name `%k` occurs free, or -1.
    int max_fresh() const { return max_fresh_; }

private:
    Term() = default;
    void finish();
    void finish_fv();

    TermKind kind_ = TermKind::Var;
    std::string name_;
    TypePtr type_;
    TypePtr binder_;
    int index_ = 0;
    std::vector<TermPtr> args_;
    std::size_t hash_ = 0;
    int height_ = 0;
    int size_ = 1;
    int loose_ = 0;
    int max_fresh_ = -1;
    std::shared_ptr<const VarSet> fv_;  // unset on Var nodes

    friend VarSet free_vars(const TermPtr& t);
};

bool alpha_eq(const TermPtr& a, const TermPtr& b);
bool alpha_eq(const Term& a, const Term& b);

struct TermHash {
    std::size_t operator()(const TermPtr& t) const { return t->hash(); }
};
struct TermAlphaEq {
    bool operator()(const TermPtr& a, const TermPtr& b) const { return alpha_eq(a, b); }
};

/// A finite set of free variables ordered by name.
class VarSet {
public:
    VarSet() = default;
    VarSet(std::initializer_list<TermPtr> vars);

    bool contains(const TermPtr& v) const;
    bool contains_name(const std::string& name) const;
    void insert(const TermPtr& v);
    VarSet with(const TermPtr& v) const;
    bool empty() const { return vars_.empty(); }
    std::size_t size() const { return vars_.size(); }
    const std::vector<TermPtr>& vars() const { return vars_; }
    auto begin() const { return vars_.begin(); }
    auto end() const { return vars_.end(); }
    bool subset_of(const VarSet& other) const;
    int max_fresh() const;
    std::size_t hash() const;

    friend bool operator==(const VarSet& a, const VarSet& b);

private:
    std::vector<TermPtr> vars_;
};

VarSet free_vars(const TermPtr& t);

/// A variable of `type` named `%k`, k the smallest index above every
/// reserved name occurring in `avoid`. The `%` prefix is rejected by the
/// problem parser so these names never clash with user variables.
TermPtr fresh_var(const TypePtr& type, const VarSet& avoid);
/// Reserved-namespace name for index `k`.
std::string fresh_name(int k);
/// Index of a reserved name, or -1.
int fresh_index(const std::string& name);

/// Replace loose index 0 of a Lam body by `replacement` (locally closed).
TermPtr instantiate(const TermPtr& body, const TermPtr& replacement);
/// `t` with the free variable `x` turned into loose index `depth`.
TermPtr abstract(const TermPtr& t, const TermPtr& x, int depth = 0);
/// Decrement every loose index of `t` (which must not contain index 0).
TermPtr shift_down(const TermPtr& t);
/// True when loose index `i` occurs in `t`.
bool has_loose(const TermPtr& t, int i);

/// Capture-avoiding simultaneous substitution. Pairs map Var terms to terms
/// of the same type; identity bindings are dropped.
class Substitution {
public:
    Substitution() = default;
    Substitution(std::initializer_list<std::pair<TermPtr, TermPtr>> bindings);
    void bind(const TermPtr& x, const TermPtr& t);
    const TermPtr* find(const TermPtr& x) const;
    bool empty() const { return map_.empty(); }
    const std::vector<std::pair<TermPtr, TermPtr>>& bindings() const { return map_; }
    VarSet domain() const;
    VarSet range_vars() const;
    /// (dom ∪ FV(range)) ∩ X = ∅
    bool away_from(const VarSet& x) const;

private:
    std::vector<std::pair<TermPtr, TermPtr>> map_;
};

TermPtr substitute(const TermPtr& t, const Substitution& s);

/// Canonical key of the alpha-class of `t`. Free variables (and the names
/// in `rigid`) keep their name; bound variables are positional.
std::string alpha_canonical(const TermPtr& t, const VarSet& rigid = {});

/// Every subterm, `t` first, pre-order. Subterms under binders may contain
/// loose indices.
void for_each_subterm(const TermPtr& t, const std::function<void(const TermPtr&)>& f);
/// Locally closed subterms of `t` (including `t`), deduplicated, pre-order.
std::vector<TermPtr> closed_subterms(const TermPtr& t);

/// Splits `h a1 ... an` into `h` and `[a1..an]`.
std::pair<TermPtr, std::vector<TermPtr>> app_spine(const TermPtr& t);

/// Bound variable of `t` (an abstraction) opened onto `z`.
inline TermPtr open_lam(const TermPtr& lam, const TermPtr& z) { return instantiate(lam->body(), z); }

}  // namespace cpo
