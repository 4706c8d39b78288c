#include <algorithm>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "cpo/search.hpp"

using namespace cpo;
using namespace cpo::test;

TEST_CASE("ordered partitions") {
    // Ordered Bell numbers.
    const std::size_t fubini[] = {1, 1, 3, 13, 75, 541};
    for (int n = 0; n <= 5; ++n) {
        auto ps = ordered_partitions(n);
        CHECK(ps.size() == fubini[n]);
        std::set<std::vector<int>> unique(ps.begin(), ps.end());
        CHECK(unique.size() == ps.size());
        for (const auto& p : ps) {
            // Levels are surjective onto 0..k-1.
            int k = p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1;
            std::set<int> used(p.begin(), p.end());
            CHECK(static_cast<int>(used.size()) == k);
        }
    }
    auto ps = ordered_partitions(2);
    CHECK(ps == std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}});
    auto ps3 = ordered_partitions(3);
    for (std::size_t i = 1; i < ps3.size(); ++i) {
        auto classes = [](const std::vector<int>& p) { return *std::max_element(p.begin(), p.end()); };
        CHECK(classes(ps3[i - 1]) <= classes(ps3[i]));
    }
}

TEST_CASE("search space") {
    auto p = load("continuation_open.cpo");
    SearchSpace full(p, Mode::Full);
    CHECK(full.free_symbols() == std::vector<std::string>{"c", "d", "e"});
    std::size_t n = 0;
    full.enumerate([&](const Candidate&) { return ++n < 5; });
    CHECK(n == 5);

    auto units = full.units({0, 0, 0});
    REQUIRE(units.size() == 1);
    CHECK(units[0].first == std::vector<std::string>{"c", "d", "e"});
    // Lex needs every member to take two arguments; all three may be small.
    REQUIRE(units[0].second.size() == 2);
    CHECK(units[0].second[0].size == SizeClass::Big);
    CHECK(units[0].second[1].size == SizeClass::Small);
    for (const auto& o : units[0].second) CHECK(o.status.is_mul());

    SUBCASE("small options only in full mode") {
        auto q = load("peano.cpo");
        SearchSpace f(q, Mode::Full), a(q, Mode::Accessible);
        std::vector<int> levels(f.free_symbols().size());
        for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = static_cast<int>(i);
        auto count = [](const auto& us, SizeClass s) {
            int c = 0;
            for (const auto& u : us)
                for (const auto& o : u.second) c += o.size == s;
            return c;
        };
        CHECK(count(f.units(levels), SizeClass::Small) > 0);
        CHECK(count(a.units(levels), SizeClass::Small) == 0);
    }
    SUBCASE("pinned statuses are kept") {
        auto q = parse_problem("sort o; fun f : o -> o -> o arity 2 status lex; fun g : o -> o -> o arity 2;");
        SearchSpace s(q, Mode::Core);
        auto us = s.units({0, 1});
        REQUIRE(us.size() == 2);
        REQUIRE(us[0].second.size() == 1);
        CHECK(us[0].second[0].status.is_lex());
        CHECK(us[1].second.size() == 2);
    }
    SUBCASE("apply") {
        Candidate c{{0, 1, 1}, {0, 0}};
        Problem q = full.apply(c);
        CHECK(q.prec.gt("c", "d"));
        CHECK(q.prec.eq("d", "e"));
        auto a = full.describe(c);
        REQUIRE(a.free_classes.size() == 2);
        CHECK(a.free_classes[0] == std::vector<std::string>{"c"});
    }
}

TEST_CASE("search outcomes") {
    SUBCASE("nothing orients a -> f(a)") {
        auto r = search_orientation(load("a_to_fa.cpo"), {});
        CHECK(r.outcome == SearchResult::Outcome::None);
        CHECK(r.candidates > 0);
        CHECK_FALSE(r.assignment);
    }
    SUBCASE("an erased precedence is re-found") {
        auto r = search_orientation(load("continuation_open.cpo"), {});
        REQUIRE(r.outcome == SearchResult::Outcome::Found);
        REQUIRE(r.solved);
        Analysis a(*r.solved);
        CHECK(orient_all(a, EngineConfig{}).terminating());
        CHECK(r.assignment->str().find("prec c = d = e") != std::string::npos);
    }
    SUBCASE("the witness orients the problem") {
        for (const char* f : {"peano.cpo", "map_fold.cpo"}) {
            CAPTURE(f);
            auto r = search_orientation(load(f), {});
            REQUIRE(r.outcome == SearchResult::Outcome::Found);
            Analysis a(*r.solved);
            CHECK(orient_all(a, EngineConfig{}).terminating());
        }
    }
    SUBCASE("pruning does not change the answer") {
        SearchOptions on, off;
        off.prune = false;
        auto a = search_orientation(load("peano.cpo"), on);
        auto b = search_orientation(load("peano.cpo"), off);
        CHECK(a.outcome == b.outcome);
        CHECK(a.candidates == b.candidates);
        CHECK(a.assignment->str() == b.assignment->str());
        CHECK(a.cache_hits > 0);
        CHECK(b.cache_hits == 0);
    }
    SUBCASE("space bound") {
        SearchOptions opt;
        opt.max_free = 2;
        auto r = search_orientation(load("peano.cpo"), opt);
        CHECK(r.outcome == SearchResult::Outcome::SpaceTooLarge);
        CHECK(r.candidates == 0);
    }
}
