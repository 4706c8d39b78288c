#include "cpo/types.hpp"

#include <algorithm>
#include <functional>

namespace cpo {

namespace {
std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}
}  // namespace

TypePtr Type::sort(std::string name) {
    auto t = std::shared_ptr<Type>(new Type());
    t->hash_ = mix(0x51, std::hash<std::string>{}(name));
    t->name_ = std::move(name);
    return t;
}

TypePtr Type::arrow(TypePtr domain, TypePtr codomain) {
    auto t = std::shared_ptr<Type>(new Type());
    t->hash_ = mix(mix(0xA7, domain->hash()), codomain->hash());
    t->arity_ = 1 + codomain->arity();
    t->order_ = std::max(1 + domain->order(), codomain->order());
    t->dom_ = std::move(domain);
    t->cod_ = std::move(codomain);
    return t;
}

TypePtr Type::arrows(const std::vector<TypePtr>& args, TypePtr result) {
    for (auto it = args.rbegin(); it != args.rend(); ++it) result = arrow(*it, std::move(result));
    return result;
}

const std::string& Type::target_sort() const {
    const Type* t = this;
    while (t->is_arrow()) t = t->cod_.get();
    return t->name_;
}

std::vector<TypePtr> Type::spine() const {
    std::vector<TypePtr> out;
    const Type* t = this;
    while (t->is_arrow()) {
        out.push_back(t->dom_);
        t = t->cod_.get();
    }
    return out;
}

TypePtr drop_args(TypePtr t, int n) {
    for (int i = 0; i < n; ++i) t = t->codomain();
    return t;
}

std::string Type::str() const {
    if (is_sort()) return name_;
    std::string d = dom_->str();
    if (dom_->is_arrow()) d = "(" + d + ")";
    return d + " -> " + cod_->str();
}

bool type_eq(const Type& a, const Type& b) {
    if (&a == &b) return true;
    if (a.hash() != b.hash()) return false;
    if (a.is_sort() != b.is_sort()) return false;
    if (a.is_sort()) return a.sort_name() == b.sort_name();
    return type_eq(*a.domain(), *b.domain()) && type_eq(*a.codomain(), *b.codomain());
}

bool type_eq(const TypePtr& a, const TypePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return type_eq(*a, *b);
}

TypeMetrics type_metrics(const TypePtr& t) { return {t->arity(), t->order()}; }

namespace {
void collect_sorts(const Type& t, std::vector<std::string>& out) {
    if (t.is_sort()) {
        if (std::find(out.begin(), out.end(), t.sort_name()) == out.end()) out.push_back(t.sort_name());
        return;
    }
    collect_sorts(*t.domain(), out);
    collect_sorts(*t.codomain(), out);
}
}  // namespace

std::vector<std::string> sorts_of(const TypePtr& t) {
    std::vector<std::string> out;
    collect_sorts(*t, out);
    return out;
}

}  // namespace cpo
