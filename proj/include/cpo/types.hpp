#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cpo {

class Type;
using TypePtr = std::shared_ptr<const Type>;

/// A simple type: either a sort or an arrow `domain -> codomain`.
///
/// Sort names are canonical: identified sorts have already been collapsed
/// to a single name by the time a Type is built. Types are immutable and
/// carry their structural hash, arity and order.
class Type {
public:
    static TypePtr sort(std::string name);
    static TypePtr arrow(TypePtr domain, TypePtr codomain);
    /// `args[0] -> args[1] -> ... -> result`
    static TypePtr arrows(const std::vector<TypePtr>& args, TypePtr result);

    bool is_sort() const { return !dom_; }
    bool is_arrow() const { return static_cast<bool>(dom_); }
    const std::string& sort_name() const { return name_; }
    const TypePtr& domain() const { return dom_; }
    const TypePtr& codomain() const { return cod_; }

    std::size_t hash() const { return hash_; }
    int arity() const { return arity_; }
    int order() const { return order_; }

    /// Final sort after stripping every arrow.
    const std::string& target_sort() const;
    /// Domains of the fully uncurried form `T1 -> ... -> Tn -> A`.
    std::vector<TypePtr> spine() const;
    std::string str() const;

private:
    Type() = default;
    std::string name_;
    TypePtr dom_, cod_;
    std::size_t hash_ = 0;
    int arity_ = 0;
    int order_ = 0;
};

bool type_eq(const TypePtr& a, const TypePtr& b);
bool type_eq(const Type& a, const Type& b);

struct TypeMetrics {
    int arity;
    int order;
};
TypeMetrics type_metrics(const TypePtr& t);

/// The type left after consuming `n` arguments; `n` must not exceed the arity.
TypePtr drop_args(TypePtr t, int n);

/// Sorts occurring in `t`, each once, in first-occurrence order.
std::vector<std::string> sorts_of(const TypePtr& t);

struct TypeHash {
    std::size_t operator()(const TypePtr& t) const { return t->hash(); }
};
struct TypeEq {
    bool operator()(const TypePtr& a, const TypePtr& b) const { return type_eq(a, b); }
};

}  // namespace cpo
