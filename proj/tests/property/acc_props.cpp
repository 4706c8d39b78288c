#include "doctest.h"
#include "props.hpp"

using namespace cpo;
using namespace cpo::test;

namespace {

bool member(const std::vector<TermPtr>& v, const TermPtr& t) {
    return std::any_of(v.begin(), v.end(), [&](const TermPtr& u) { return alpha_eq(u, t); });
}

GenLimits acc_heavy() {
    GenLimits lim;
    lim.acc_p = 0.9;
    lim.arg_depth = 2;
    return lim;
}

// Mostly a fully applied symbol with an accessible argument, so that the
// accessible set is not just the term itself.
TermPtr acc_rooted(const Problem& p, TermGen& g, Rng& rng) {
    std::vector<const SymbolDecl*> fs;
    for (const auto& f : p.symbols)
        if (!f.acc.empty()) fs.push_back(&f);
    if (fs.empty() || rng.chance(0.3)) return g.any(kHeight);
    const SymbolDecl& f = *rng.pick(fs);
    auto spine = f.type->spine();
    std::vector<TermPtr> args;
    for (const auto& d : spine) {
        TermPtr a = g.term(d, kHeight - 1);
        if (!a) return g.any(kHeight);
        args.push_back(a);
    }
    TermPtr t = make_fun(f, std::vector<TermPtr>(args.begin(), args.begin() + f.arity));
    for (std::size_t i = static_cast<std::size_t>(f.arity); i < args.size(); ++i) t = Term::app(t, args[i]);
    return t;
}

bool fv_within(const TermPtr& u, const TermPtr& t) { return free_vars(u).subset_of(free_vars(t)); }

}  // namespace

TEST_CASE("accessible and basic subterms are stable under substitution") {
    Rng rng(prop_seed() + 30);
    int acc_pairs = 0, basic_pairs = 0;
    for (int c = 0; c < kCases;) {
        World w(rng, acc_heavy());
        TermGen g(w.problem(), rng);
        const AccContext& acc = w.analysis().acc();
        for (int k = 0; k < 10 && c < kCases; ++k) {
            TermPtr t = acc_rooted(w.problem(), g, rng);
            if (!t) continue;
            ++c;
            Substitution s = g.subst_for(t, 3);
            TermPtr ts = substitute(t, s);
            const auto& as = acc.acc_set(ts);
            for (const auto& u : acc.acc_set(t)) {
                CHECK(member(as, substitute(u, s)));
                acc_pairs += u != t;
            }
            const auto& bs = acc.basic_subterms(ts);
            for (const auto& u : acc.basic_subterms(t)) {
                CHECK(member(bs, substitute(u, s)));
                basic_pairs += u != t;
            }
        }
    }
    // Proper pairs, not counting t itself.
    CHECK(acc_pairs > kCases / 2);
    CHECK(basic_pairs > kCases / 2);
}

TEST_CASE("structural decrease is stable under substitution away from X") {
    Rng rng(prop_seed() + 31);
    int witnesses = 0;
    for (int c = 0; c < kCases * 20 && witnesses < kCases; ++c) {
        World w(rng, acc_heavy());
        TermGen g(w.problem(), rng);
        const AccContext& acc = w.analysis().acc();
        TermPtr t = acc_rooted(w.problem(), g, rng);
        if (!t || !t->type()->is_sort()) continue;
        VarSet x;
        for (const auto& v : g.vars())
            if (rng.chance(0.5) && !free_vars(t).contains(v)) x.insert(v);
        auto cands = acc.struct_candidates(x, t, 16);
        if (cands.empty()) continue;
        Substitution s = g.subst_for(t, 2, x);
        REQUIRE(s.away_from(x));
        TermPtr ts = substitute(t, s);
        for (const auto& [u, wit] : cands) {
            ++witnesses;
            CHECK(acc.check_struct(x, t, u, wit));
            CHECK(acc.struct_smaller(x, t, u).has_value());
            CHECK(acc.struct_smaller(x, ts, substitute(u, s)).has_value());
        }
    }
    CHECK(witnesses >= kCases);
}

TEST_CASE("accessible and basic subterms have fewer free variables") {
    Rng rng(prop_seed() + 32);
    int proper = 0;
    for (int c = 0; c < kCases;) {
        World w(rng, acc_heavy());
        TermGen g(w.problem(), rng);
        const AccContext& acc = w.analysis().acc();
        for (int k = 0; k < 10 && c < kCases; ++k) {
            TermPtr t = acc_rooted(w.problem(), g, rng);
            if (!t) continue;
            ++c;
            const auto& as = acc.acc_set(t);
            const auto& bs = acc.basic_subterms(t);
            CHECK(alpha_eq(as.front(), t));
            CHECK(alpha_eq(bs.front(), t));
            CHECK(static_cast<int>(as.size()) <= t->size());
            CHECK(static_cast<int>(bs.size()) <= t->size());
            for (const auto& u : as) CHECK(fv_within(u, t));
            for (const auto& u : bs) CHECK(fv_within(u, t));
            proper += as.size() > 1;
        }
    }
    CHECK(proper > kCases / 10);
}

TEST_CASE("accessible subterms of a sort occur positively") {
    Rng rng(prop_seed() + 33);
    int occurring = 0;
    for (int c = 0; c < kCases * 20 && occurring < kCases; ++c) {
        World w(rng, acc_heavy());
        TermGen g(w.problem(), rng);
        const AccContext& acc = w.analysis().acc();
        const TypeOrder& ord = w.analysis().types();
        TermPtr t = acc_rooted(w.problem(), g, rng);
        if (!t || !t->type()->is_sort()) continue;
        const std::string& a = t->type()->sort_name();
        for (const auto& u : acc.acc_set(t)) {
            if (sort_absent(a, u->type())) continue;
            ++occurring;
            CHECK(ord.sort_compat(a, u->type(), false));
            Positions ps = positions(u->type(), a);
            CHECK(std::includes(ps.plus.begin(), ps.plus.end(), ps.of_sort.begin(), ps.of_sort.end()));
        }
    }
    CHECK(occurring >= kCases);
}
