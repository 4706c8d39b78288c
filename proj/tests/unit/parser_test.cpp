#include "doctest.h"
#include "support.hpp"

using namespace cpo;
using namespace cpo::test;

namespace {

Error parse_error(const std::string& text) {
    try {
        parse_problem(text);
    } catch (const Error& e) {
        return e;
    }
    FAIL("expected a parse error for: " << text);
    return Error(ErrorCode::Syntax, "");
}

}  // namespace

TEST_CASE("declarations") {
    Problem p = parse_problem(R"(
# comment
sorts O, N;
sortprec O > N;
fun zero : O arity 0;
fun lim : (N -> O) -> O arity 1 acc {1};
fun f, g : O -> O -> O arity 2 status lex(1) small;
prec f = g;
prec f > zero > lim;
var x, y : O;
rule f(x, y) -> x;
)");
    CHECK(p.sorts.gt("O", "N"));
    CHECK_FALSE(p.sorts.gt("N", "O"));
    const SymbolDecl* lim = p.symbol("lim");
    REQUIRE(lim);
    CHECK(lim->acc == std::vector<int>{1});
    CHECK(lim->arity == 1);
    const SymbolDecl* g = p.symbol("g");
    REQUIRE(g);
    CHECK(g->small());
    CHECK(g->status == Status::lex(1));
    CHECK(g->lex_depth() == 1);
    CHECK(p.prec.eq("f", "g"));
    CHECK(p.prec.gt("g", "lim"));
    CHECK(p.vars.size() == 2);
    REQUIRE(p.rules.size() == 1);
    CHECK(print_term(p.rules[0].lhs) == "f(x, y)");
}

TEST_CASE("defaults") {
    Problem p = parse_problem("sort o; fun h : o -> o; fun k : o -> o -> o arity 2;");
    CHECK(p.symbol("h")->arity == 0);
    CHECK(p.symbol("k")->status.is_mul());
    CHECK_FALSE(p.symbol("k")->small());
    CHECK(p.symbol("k")->lex_depth() == 2);
}

TEST_CASE("sort identification") {
    Problem p = parse_problem("sorts a, b, c; sortprec a = b; sortprec b > c;");
    CHECK(p.sorts.canonical("a") == p.sorts.canonical("b"));
    CHECK(p.sorts.gt("a", "c"));
    CHECK(p.sorts.sorts().size() == 2);
}

TEST_CASE("numeric names and calls") {
    Problem p = parse_problem(R"(
sort n;
fun 0 : n arity 0;
fun s : n -> n arity 1;
fun h : n -> n arity 0;
var F : n -> n;
rule s(0) -> F(0);
rule h (s(0)) -> h 0;
)");
    CHECK(print_term(p.rules[0].lhs) == "s(0)");
    CHECK(print_term(p.rules[0].rhs) == "F 0");
    CHECK(print_term(p.rules[1].lhs) == "h s(0)");
}

TEST_CASE("middle terms") {
    auto p = load("list_arith.cpo");
    REQUIRE(p.rules.size() == 8);
    CHECK(p.rules[3].via.size() == 1);
    CHECK(p.rules[3].chain().size() == 3);
    CHECK(print_term(p.rules[3].via[0]) == "(\\z. plus(times(y) z) z) x");
}

TEST_CASE("errors carry positions") {
    SUBCASE("unknown variable") {
        auto e = parse_error("sort o;\nfun a : o arity 0;\nrule a -> b;");
        CHECK(e.code() == ErrorCode::UnknownVariable);
        CHECK(e.pos().line == 3);
        CHECK(e.pos().column == 11);
    }
    SUBCASE("arity exceeds the type") {
        auto e = parse_error("sort o; fun f : o arity 1;");
        CHECK(e.code() == ErrorCode::ArityMismatch);
        CHECK(e.pos().line == 1);
    }
    SUBCASE("wrong argument count") {
        CHECK(parse_error("sort o; fun a : o arity 0; fun f : o -> o arity 1; rule f(a, a) -> a;").code() ==
              ErrorCode::ArityMismatch);
    }
    SUBCASE("a space before the parenthesis is application") {
        CHECK(parse_error("sort o; fun a : o arity 0; fun f : o -> o arity 1; rule f (a) -> a;").code() ==
              ErrorCode::ArityMismatch);
    }
    SUBCASE("duplicates") {
        CHECK(parse_error("sort o; sort o;").code() == ErrorCode::Duplicate);
        CHECK(parse_error("sort o; var x : o; var x : o;").code() == ErrorCode::Duplicate);
        CHECK(parse_error("sort o; fun a : o; fun a : o;").code() == ErrorCode::Duplicate);
    }
    SUBCASE("unknown sort") { CHECK(parse_error("sort o; fun a : p arity 0;").code() == ErrorCode::UnknownSort); }
    SUBCASE("unknown symbol in a precedence") {
        CHECK(parse_error("sort o; fun a : o; prec a > b;").code() == ErrorCode::UnknownSymbol);
    }
    SUBCASE("ill-typed application") {
        CHECK(parse_error("sort o; fun a : o; rule a a -> a;").code() == ErrorCode::IllTyped);
    }
    SUBCASE("syntax") {
        auto e = parse_error("sort o; fun a : o arity 0 rule");
        CHECK(e.code() == ErrorCode::Syntax);
        CHECK(e.pos().column == 27);
        CHECK(parse_error("sort o; fun a : o").code() == ErrorCode::Syntax);
        CHECK(parse_error("sort o; fun a : o; rule a -> ;").code() == ErrorCode::Syntax);
    }
    SUBCASE("cyclic orders") {
        CHECK(parse_error("sorts a, b; sortprec a > b; sortprec b > a;").code() == ErrorCode::InvalidDeclaration);
        CHECK(parse_error("sort o; fun a, b : o; prec a > b; prec b > a;").code() == ErrorCode::InvalidDeclaration);
    }
}

TEST_CASE("printing round trip") {
    for (const char* f : {"continuation.cpo", "brouwer.cpo", "tree_flatten.cpo", "tree_flatten_mapbig.cpo", "list_arith.cpo", "f_small.cpo",
                          "acc_negative.cpo", "mixed_status.cpo", "lex_arity1.cpo", "peano.cpo", "map_fold.cpo"}) {
        CAPTURE(f);
        Problem p = load(f);
        std::string text = print_problem(p);
        Problem q = parse_problem(text);
        CHECK(problem_diff(p, q) == "");
        CHECK(print_problem(q) == text);
    }
}
