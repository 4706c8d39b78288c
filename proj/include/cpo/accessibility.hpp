#pragma once

#include <map>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cpo/diagnostic.hpp"
#include "cpo/signature.hpp"
#include "cpo/term.hpp"
#include "cpo/type_order.hpp"

namespace cpo {

/// A witness for t ⊐_X u: u = v x̄ with t ⊳acc v.
struct StructWitness {
    TermPtr v;
    std::vector<TermPtr> xs;
};

/// Accessible arguments, basic sorts and the relations derived from them.
/// Caches are keyed by term pointer and only ever filled.
class AccContext {
public:
    AccContext(const Problem& p, const TypeOrder& ord);

    std::vector<Diagnostic> validate_acc(const SymbolDecl& f) const;
    bool is_basic(const std::string& sort) const { return basic_.count(sort) > 0; }
    const std::set<std::string>& basic_sorts() const { return basic_; }

    /// Every u with t ⊵acc u; t first.
    const std::vector<TermPtr>& acc_set(const TermPtr& t) const;
    /// t, then every locally closed subterm of t whose type is a basic sort.
    const std::vector<TermPtr>& basic_subterms(const TermPtr& t) const;

    std::optional<StructWitness> struct_smaller(const VarSet& x, const TermPtr& t, const TermPtr& u) const;
    /// Candidate terms w with t ⊐_X w, built from X; at most `limit`.
    std::vector<std::pair<TermPtr, StructWitness>> struct_candidates(const VarSet& x, const TermPtr& t,
                                                                     std::size_t limit = 256) const;
    /// Re-checks a recorded witness.
    bool check_struct(const VarSet& x, const TermPtr& t, const TermPtr& u, const StructWitness& w) const;

private:
    const Problem* p_;
    const TypeOrder* ord_;
    std::set<std::string> basic_;
    mutable std::mutex mu_;
    mutable std::unordered_map<const Term*, std::pair<TermPtr, std::vector<TermPtr>>> acc_cache_;
    mutable std::unordered_map<const Term*, std::pair<TermPtr, std::vector<TermPtr>>> basic_cache_;
};

/// Least fixpoint of the basic-sort conditions.
std::set<std::string> compute_basic_sorts(const Problem& p, const TypeOrder& ord);

}  // namespace cpo
