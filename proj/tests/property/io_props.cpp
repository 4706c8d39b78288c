#include "json.hpp"

#include "doctest.h"
#include "props.hpp"

using namespace cpo;
using namespace cpo::test;

namespace {

/// A random rule over `p`: lhs, rhs and sometimes a middle term, all of one
/// type, with no binder name also occurring free in the rule.
std::string random_rule(Rng& rng, const Problem& p, TermGen& gen) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        TermPtr l = gen.any(kHeight);
        if (!l) continue;
        std::vector<TermPtr> chain{l};
        int extra = rng.chance(0.2) ? 2 : 1;
        for (int k = 0; k < extra; ++k)
            if (TermPtr t = gen.term(l->type(), rng.range(0, kHeight))) chain.push_back(t);
        if (chain.size() < 2) continue;
        std::set<std::string> binders, free;
        for (const auto& t : chain) {
            binder_names(t, binders);
            for (const auto& x : free_vars(t)) free.insert(x->name());
        }
        bool clash = false;
        for (const auto& b : binders) clash = clash || free.count(b);
        if (clash) continue;
        std::string text = "rule " + print_term(chain.front()) + " -> " + print_term(chain.back());
        for (std::size_t i = 1; i + 1 < chain.size(); ++i) text += (i == 1 ? " via " : ", ") + print_term(chain[i]);
        return text + ";\n";
    }
    (void)p;
    return {};
}

std::string random_problem_text(Rng& rng) {
    std::string text = random_signature_text(rng);
    Problem sig = parse_problem(text);
    TermGen gen(sig, rng);
    int n = rng.range(0, 3);
    for (int i = 0; i < n; ++i) text += random_rule(rng, sig, gen);
    return text;
}

}  // namespace

TEST_CASE("printing a problem and parsing it back gives the same problem") {
    Rng rng(prop_seed() + 71);
    int with_rules = 0;
    for (int i = 0; i < kCases; ++i) {
        std::string text = random_problem_text(rng);
        Problem p = parse_problem(text);
        with_rules += !p.rules.empty();
        std::string printed = print_problem(p);
        Problem q;
        try {
            q = parse_problem(printed);
        } catch (const std::exception& e) {
            FAIL_CHECK("reparse failed: " << e.what() << "\n--- input\n" << text << "--- printed\n" << printed);
            continue;
        }
        std::string d = problem_diff(p, q);
        CHECK_MESSAGE(d.empty(), d << "\n--- input\n" << text << "--- printed\n" << printed);
        CHECK(print_problem(q) == printed);
    }
    CHECK(with_rules > kCases / 2);
}

TEST_CASE("printed terms parse back to alpha-equal terms") {
    Rng rng(prop_seed() + 72);
    for (int i = 0; i < kCases; ++i) {
        std::string sig = random_signature_text(rng);
        Problem p = parse_problem(sig);
        TermGen gen(p, rng);
        TermPtr t = gen.any(kHeight);
        if (!t) continue;
        std::set<std::string> binders;
        binder_names(t, binders);
        bool clash = false;
        for (const auto& x : free_vars(t)) clash = clash || binders.count(x->name());
        if (clash) continue;
        TermPtr back = terms_in(sig, {print_term(t)}).front();
        CHECK_MESSAGE(alpha_eq(t, back), print_term(t) << " reparsed as " << print_term(back));
    }
}

TEST_CASE("JSON reports are deterministic and well formed") {
    Rng rng(prop_seed() + 73);
    EngineConfig cfg;
    cfg.max_depth = 200;
    for (int i = 0; i < kCases; ++i) {
        std::string text = random_problem_text(rng);
        auto l = parse_analysed(text);
        Report r1 = orient_all(*l->analysis, cfg);
        Report r2 = orient_all(*l->analysis, cfg, 2);
        RenderOptions opt{"prop", false};
        std::string a = render_json(r1, opt), b = render_json(r2, opt);
        REQUIRE(a == b);
        auto j = nlohmann::ordered_json::parse(a);
        CHECK(j["rules"].size() == l->problem.rules.size());
        CHECK(j.dump(2) + "\n" == a);
    }
}
