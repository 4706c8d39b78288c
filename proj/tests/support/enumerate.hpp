#pragma once

#include <set>
#include <string>
#include <vector>

#include "cpo/signature.hpp"

namespace cpo::test {

/// Every well-typed term over the symbols and declared variables of `p`,
/// grouped by size (node count), up to alpha-equivalence.
inline std::vector<std::vector<TermPtr>> enumerate_terms(const Problem& p, int max_size) {
    std::vector<std::vector<TermPtr>> by(static_cast<std::size_t>(max_size) + 1);
    std::set<std::string> seen;
    auto add = [&](int s, const TermPtr& t) {
        if (seen.insert(alpha_canonical(t)).second) by[static_cast<std::size_t>(s)].push_back(t);
    };
    // Ways to split `total` into `k` positive sizes.
    auto splits = [](int total, int k) {
        std::vector<std::vector<int>> out;
        std::vector<int> cur;
        auto rec = [&](auto& self, int left, int parts) -> void {
            if (parts == 0) {
                if (left == 0) out.push_back(cur);
                return;
            }
            for (int s = 1; s <= left - (parts - 1); ++s) {
                cur.push_back(s);
                self(self, left - s, parts - 1);
                cur.pop_back();
            }
        };
        rec(rec, total, k);
        return out;
    };
    for (int s = 1; s <= max_size; ++s) {
        if (s == 1)
            for (const auto& v : p.vars) add(1, Term::var(v.name, v.type));
        for (const auto& f : p.symbols) {
            if (f.arity == 0) {
                if (s == 1) add(1, make_fun(f, {}));
                continue;
            }
            auto spine = f.type->spine();
            for (const auto& sp : splits(s - 1, f.arity)) {
                bool empty = false;
                for (int k : sp) empty = empty || by[static_cast<std::size_t>(k)].empty();
                if (empty) continue;
                std::vector<std::size_t> idx(sp.size(), 0);
                for (bool more = true; more;) {
                    std::vector<TermPtr> args;
                    bool typed = true;
                    for (std::size_t i = 0; i < sp.size(); ++i) {
                        args.push_back(by[static_cast<std::size_t>(sp[i])][idx[i]]);
                        typed = typed && type_eq(args.back()->type(), spine[i]);
                    }
                    if (typed) add(s, make_fun(f, args));
                    more = false;
                    for (std::size_t i = sp.size(); i-- > 0;) {
                        if (++idx[i] < by[static_cast<std::size_t>(sp[i])].size()) {
                            more = true;
                            break;
                        }
                        idx[i] = 0;
                    }
                }
            }
        }
        for (int a = 1; a + 1 < s; ++a) {
            int b = s - 1 - a;
            for (const auto& fn : by[static_cast<std::size_t>(a)]) {
                if (!fn->type()->is_arrow()) continue;
                for (const auto& arg : by[static_cast<std::size_t>(b)])
                    if (type_eq(fn->type()->domain(), arg->type())) add(s, Term::app(fn, arg));
            }
        }
        if (s >= 2)
            for (const auto& v : p.vars) {
                TermPtr x = Term::var(v.name, v.type);
                for (const auto& body : by[static_cast<std::size_t>(s - 1)]) add(s, Term::lam(x, body));
            }
    }
    return by;
}

inline std::vector<TermPtr> flatten(const std::vector<std::vector<TermPtr>>& by) {
    std::vector<TermPtr> out;
    for (const auto& v : by) out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace cpo::test
