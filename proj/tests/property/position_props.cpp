#include "doctest.h"
#include "props.hpp"

using namespace cpo;
using namespace cpo::test;

namespace {

// Walks the type tree with an explicit path and polarity.
void oracle_walk(const TypePtr& t, const std::string& a, const std::string& path, bool positive, Positions& out) {
    out.all.insert(path);
    if (t->is_sort()) {
        (positive ? out.plus : out.minus).insert(path);
        if (t->sort_name() == a) out.of_sort.insert(path);
        return;
    }
    oracle_walk(t->domain(), a, path + "1", !positive, out);
    oracle_walk(t->codomain(), a, path + "2", positive, out);
}

bool subset(const PosSet& a, const PosSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

std::vector<std::string> sort_names(const TypeOrder& ord) { return ord.sorts().sorts(); }

}  // namespace

TEST_CASE("positions agree with a polarity walk") {
    Rng rng(prop_seed() + 20);
    for (int c = 0; c < kCases; ++c) {
        Problem p = parse_problem(random_sorts_text(rng, rng.range(1, 4)));
        auto sorts = p.sorts.sorts();
        TypePtr t = random_type(rng, sorts, 4, 0.6);
        std::string a = rng.pick(sorts);
        Positions want;
        oracle_walk(t, a, "", true, want);
        Positions got = positions(t, a);
        CHECK(got.all == want.all);
        CHECK(got.of_sort == want.of_sort);
        CHECK(got.plus == want.plus);
        CHECK(got.minus == want.minus);
        CHECK(occurs_only_positively(a, t) == subset(want.of_sort, want.plus));
        CHECK(occurs_only_negatively(a, t) == subset(want.of_sort, want.minus));
        CHECK(sort_absent(a, t) == want.of_sort.empty());
    }
}

TEST_CASE("position families are nested") {
    Rng rng(prop_seed() + 21);
    int nonempty = 0;
    for (int c = 0; c < kCases; ++c) {
        Problem p = parse_problem(random_sorts_text(rng, rng.range(1, 4)));
        auto sorts = p.sorts.sorts();
        TypePtr t = random_type(rng, sorts, 4, 0.6);
        std::string a = rng.pick(sorts);
        auto cp = comp_positions(a, t);
        CHECK(subset(cp.spos, cp.lpos));
        CHECK(subset(cp.npos, cp.cpos));
        Positions ps = positions(t, a);
        for (const auto* s : {&cp.spos, &cp.npos, &cp.lpos, &cp.cpos}) CHECK(subset(*s, ps.all));
        nonempty += !cp.spos.empty();
    }
    CHECK(nonempty > 50);
}

TEST_CASE("strictly smaller sorts leave every family empty") {
    Rng rng(prop_seed() + 22);
    int hits = 0;
    for (int c = 0; c < kCases * 50 && hits < kCases; ++c) {
        Problem p = parse_problem(random_sorts_text(rng, rng.range(2, 4), 0.7));
        TypeOrder ord(p.sorts);
        auto sorts = sort_names(ord);
        std::string a = rng.pick(sorts);
        TypePtr t = random_type(rng, sorts, 3, 0.5);
        if (!ord.sort_compat(a, t, true)) continue;
        ++hits;
        auto cp = comp_positions(a, t);
        CHECK(cp.spos.empty());
        CHECK(cp.npos.empty());
        CHECK(cp.lpos.empty());
        CHECK(cp.cpos.empty());
    }
    CHECK(hits >= kCases);
}

TEST_CASE("emptiness is preserved downwards") {
    Rng rng(prop_seed() + 23);
    int hits = 0;
    for (int c = 0; c < kCases * 4 && hits < kCases; ++c) {
        Problem p = parse_problem(random_sorts_text(rng, rng.range(1, 3), 0.6));
        TypeOrder ord(p.sorts);
        auto sorts = sort_names(ord);
        std::string a = rng.pick(sorts);
        TypePtr t = random_type(rng, sorts, 3, 0.6);
        if (!ord.sort_compat(a, t, false)) continue;
        auto ct = comp_positions(a, t);
        for (const auto& u : ord.down_set(t)) {
            ++hits;
            auto cu = comp_positions(a, u);
            if (ct.spos.empty()) CHECK(cu.spos.empty());
            if (ct.npos.empty()) CHECK(cu.npos.empty());
            if (ct.lpos.empty()) CHECK(cu.lpos.empty());
            if (ct.cpos.empty()) CHECK(cu.cpos.empty());
        }
    }
    CHECK(hits >= kCases);
}

TEST_CASE("sufficient conditions never contradict the direct check") {
    Rng rng(prop_seed() + 24);
    GenLimits lim;
    lim.arg_depth = 2;
    int symbols = 0, lemma_hits = 0;
    while (symbols < kCases) {
        World w(rng, lim);
        const TypeOrder& ord = w.analysis().types();
        for (const auto& e : classify_small_candidates(w.problem(), ord)) {
            ++symbols;
            SymbolDecl g = *w.problem().symbol(e.symbol);
            g.size = SizeClass::Small;
            bool direct = check_small_conditions(g, ord).empty();
            CHECK(e.eligible == direct);
            CHECK(e.reasons.empty() == direct);
            REQUIRE_FALSE(e.conditions.empty());
            CHECK(e.conditions.back() == "direct-check");
            if (e.conditions.size() > 1) {
                ++lemma_hits;
                CHECK_MESSAGE(direct, e.symbol << " : " << g.type->str());
            }
        }
    }
    CHECK(lemma_hits > 100);
}
