#pragma once

#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cpo/signature.hpp"
#include "cpo/types.hpp"

namespace cpo {

/// Positions in a type: strings over {1,2}; the empty string is the root.
using Position = std::string;
using PosSet = std::set<Position>;

inline std::string show_position(const Position& p) { return p.empty() ? "e" : p; }

/// The ordering on types generated by a sort precedence: the smallest
/// order containing >_S and the right-subterm relation, closed under
/// V > V' => U -> V > U -> V'. A sort is never above an arrow type.
class TypeOrder {
public:
    explicit TypeOrder(const SortPrecedence& sorts) : sorts_(&sorts) {}

    bool gt(const TypePtr& t, const TypePtr& u) const;
    bool ge(const TypePtr& t, const TypePtr& u) const { return type_eq(t, u) || gt(t, u); }
    /// Reflexive closure of (> ∪ left-subterm)+.
    bool ge_tw(const TypePtr& t, const TypePtr& u) const;
    bool gt_tw(const TypePtr& t, const TypePtr& u) const { return !type_eq(t, u) && ge_tw(t, u); }
    /// Sort_{<=A}(T), or Sort_{<A}(T) when `strict`.
    bool sort_compat(const std::string& a, const TypePtr& t, bool strict) const;
    bool sort_gt(const std::string& a, const std::string& b) const { return sorts_->gt(a, b); }
    /// The immediate >-successors of `t` (its whole down-set).
    std::vector<TypePtr> down_set(const TypePtr& t) const;

    const SortPrecedence& sorts() const { return *sorts_; }

private:
    const std::vector<TypePtr>& tw_reach(const TypePtr& t) const;

    const SortPrecedence* sorts_;
    mutable std::mutex mu_;
    mutable std::unordered_map<TypePtr, std::vector<TypePtr>, TypeHash, TypeEq> reach_;
};

struct Positions {
    PosSet all, of_sort, plus, minus;
};

Positions positions(const TypePtr& t, const std::string& a);
bool occurs_only_positively(const std::string& a, const TypePtr& t);
bool occurs_only_negatively(const std::string& a, const TypePtr& t);
/// Pos(A, T) = ∅
bool sort_absent(const std::string& a, const TypePtr& t);

}  // namespace cpo
