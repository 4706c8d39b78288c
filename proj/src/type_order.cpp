#include "cpo/type_order.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace cpo {

bool TypeOrder::gt(const TypePtr& t, const TypePtr& u) const {
    if (t->is_sort()) return u->is_sort() && sorts_->gt(t->sort_name(), u->sort_name());
    if (ge(t->codomain(), u)) return true;
    return u->is_arrow() && type_eq(t->domain(), u->domain()) && gt(t->codomain(), u->codomain());
}

std::vector<TypePtr> TypeOrder::down_set(const TypePtr& t) const {
    std::vector<TypePtr> out;
    if (t->is_sort()) {
        for (const auto& b : sorts_->sorts())
            if (sorts_->gt(t->sort_name(), b)) out.push_back(Type::sort(b));
        return out;
    }
    out.push_back(t->codomain());
    for (const auto& w : down_set(t->codomain())) {
        out.push_back(w);
        out.push_back(Type::arrow(t->domain(), w));
    }
    std::vector<TypePtr> dedup;
    for (const auto& v : out)
        if (std::none_of(dedup.begin(), dedup.end(), [&](const TypePtr& d) { return type_eq(d, v); }))
            dedup.push_back(v);
    return dedup;
}

const std::vector<TypePtr>& TypeOrder::tw_reach(const TypePtr& t) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = reach_.find(t);
        if (it != reach_.end()) return it->second;
    }
    std::unordered_set<TypePtr, TypeHash, TypeEq> seen{t};
    std::vector<TypePtr> order{t};
    std::deque<TypePtr> work{t};
    while (!work.empty()) {
        TypePtr cur = work.front();
        work.pop_front();
        std::vector<TypePtr> next = down_set(cur);
        if (cur->is_arrow()) next.push_back(cur->domain());
        for (const auto& n : next)
            if (seen.insert(n).second) {
                order.push_back(n);
                work.push_back(n);
            }
    }
    std::lock_guard<std::mutex> lock(mu_);
    return reach_.emplace(t, std::move(order)).first->second;
}

bool TypeOrder::ge_tw(const TypePtr& t, const TypePtr& u) const {
    if (type_eq(t, u)) return true;
    const auto& r = tw_reach(t);
    return std::any_of(r.begin(), r.end(), [&](const TypePtr& v) { return type_eq(v, u); });
}

bool TypeOrder::sort_compat(const std::string& a, const TypePtr& t, bool strict) const {
    TypePtr at = Type::sort(a);
    for (const auto& b : sorts_of(t)) {
        TypePtr bt = Type::sort(b);
        if (strict ? !gt_tw(at, bt) : !ge_tw(at, bt)) return false;
    }
    return true;
}

namespace {
PosSet prefixed(char c, const PosSet& s) {
    PosSet out;
    for (const auto& p : s) out.insert(c + p);
    return out;
}
void add_all(PosSet& into, const PosSet& s) { into.insert(s.begin(), s.end()); }
}  // namespace

Positions positions(const TypePtr& t, const std::string& a) {
    Positions r;
    if (t->is_sort()) {
        r.all = r.plus = {""};
        if (t->sort_name() == a) r.of_sort = {""};
        return r;
    }
    Positions d = positions(t->domain(), a), c = positions(t->codomain(), a);
    r.all = prefixed('1', d.all);
    add_all(r.all, prefixed('2', c.all));
    r.all.insert("");
    r.of_sort = prefixed('1', d.of_sort);
    add_all(r.of_sort, prefixed('2', c.of_sort));
    r.plus = prefixed('1', d.minus);
    add_all(r.plus, prefixed('2', c.plus));
    r.minus = prefixed('1', d.plus);
    add_all(r.minus, prefixed('2', c.minus));
    return r;
}

bool occurs_only_positively(const std::string& a, const TypePtr& t) {
    Positions p = positions(t, a);
    return std::includes(p.plus.begin(), p.plus.end(), p.of_sort.begin(), p.of_sort.end());
}

bool occurs_only_negatively(const std::string& a, const TypePtr& t) {
    Positions p = positions(t, a);
    return std::includes(p.minus.begin(), p.minus.end(), p.of_sort.begin(), p.of_sort.end());
}

bool sort_absent(const std::string& a, const TypePtr& t) {
    auto s = sorts_of(t);
    return std::find(s.begin(), s.end(), a) == s.end();
}

}  // namespace cpo
