#include "cpo/search.hpp"
#include "doctest.h"
#include "props.hpp"

using namespace cpo;
using namespace cpo::test;

namespace {

constexpr int kSearchCases = kCases;

std::string random_open_problem(Rng& rng) {
    GenLimits lim;
    lim.max_sorts = 2;
    lim.max_symbols = 2;
    lim.leave_free = true;
    std::string text = random_signature_text(rng, lim);
    Problem sig = parse_problem(text);
    TermGen gen(sig, rng);
    int n = rng.range(1, 2);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < 40; ++k) {
            TermPtr l = gen.any(3);
            if (!l) continue;
            TermPtr r = gen.term(l->type(), 2);
            if (!r) continue;
            std::set<std::string> binders, fv;
            binder_names(l, binders);
            binder_names(r, binders);
            VarSet lv = free_vars(l);
            bool escapes = false;
            for (const auto& x : free_vars(r)) escapes = escapes || !lv.contains(x);
            if (escapes && k < 30) continue;
            for (const auto& x : lv) fv.insert(x->name());
            for (const auto& x : free_vars(r)) fv.insert(x->name());
            bool clash = false;
            for (const auto& b : binders) clash = clash || fv.count(b);
            if (clash) continue;
            text += "rule " + print_term(l) + " -> " + print_term(r) + ";\n";
            break;
        }
    }
    return text;
}

/// First candidate in canonical order that validates and orients every
/// rule, each candidate analysed from scratch.
std::optional<Candidate> naive_first(const Problem& p, const EngineConfig& cfg) {
    SearchSpace space(p, cfg.mode);
    std::optional<Candidate> found;
    space.enumerate([&](const Candidate& c) {
        Problem q = space.apply(c);
        Analysis a(q);
        Report r = orient_all(a, cfg);
        if (r.valid && r.terminating()) {
            found = c;
            return false;
        }
        return true;
    });
    return found;
}

}  // namespace

TEST_CASE("search agrees with a from-scratch enumeration, with and without pruning") {
    Rng rng(prop_seed() + 91);
    int found = 0, none = 0;
    for (int i = 0; i < kSearchCases; ++i) {
        std::string text = random_open_problem(rng);
        Problem p = parse_problem(text);
        SearchOptions opt;
        opt.max_free = 4;
        opt.engine.max_depth = 200;
        opt.engine.mode = rng.chance(0.5) ? Mode::Full : Mode::Accessible;
        SearchSpace space(p, opt.engine.mode);
        if (static_cast<int>(space.free_symbols().size()) > opt.max_free) continue;

        auto oracle = naive_first(p, opt.engine);
        SearchResult pruned = search_orientation(p, opt);
        opt.prune = false;
        SearchResult plain = search_orientation(p, opt);

        INFO(text);
        CHECK(pruned.outcome == plain.outcome);
        CHECK(pruned.candidates == plain.candidates);
        CHECK(plain.cache_hits == 0);
        if (oracle) {
            ++found;
            REQUIRE(pruned.outcome == SearchResult::Outcome::Found);
            CHECK(pruned.assignment->str() == space.describe(*oracle).str());
            CHECK(plain.assignment->str() == pruned.assignment->str());
            CHECK(problem_diff(*pruned.solved, space.apply(*oracle)) == "");
        } else {
            ++none;
            CHECK(pruned.outcome == SearchResult::Outcome::None);
        }
    }
    MESSAGE("found " << found << ", none " << none);
    CHECK(found > 10);
    CHECK(none > 10);
}
