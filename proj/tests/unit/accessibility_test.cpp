#include "doctest.h"
#include "support.hpp"

using namespace cpo;
using namespace cpo::test;

namespace {

bool contains(const std::vector<TermPtr>& ts, const TermPtr& t) {
    for (const auto& u : ts)
        if (alpha_eq(u, t)) return true;
    return false;
}

const char* kOrd = R"(
sorts O, N, A;
sortprec O > N;
fun zero : O arity 0;
fun suc : O -> O arity 1 acc {1};
fun lim : (N -> O) -> O arity 1 acc {1};
fun 0 : N arity 0;
fun s : N -> N arity 1 acc {1};
var x : O;
var y : N -> O;
var n, m : N;
)";

}  // namespace

TEST_CASE("accessible argument validation") {
    auto L = load_analysed("brouwer.cpo");
    for (const char* f : {"suc", "lim", "rec"})
        CHECK(L->analysis->acc().validate_acc(*L->problem.symbol(f)).empty());
    auto neg = load_analysed("acc_negative.cpo");
    auto ds = neg->analysis->acc().validate_acc(*neg->problem.symbol("c"));
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].code == "AccPositivityViolation");
    CHECK(ds[0].witness == "1");
    auto above = parse_analysed("sorts A, B; sortprec B > A; fun c : B -> A arity 1 acc {1};");
    CHECK(above->analysis->acc().validate_acc(*above->problem.symbol("c"))[0].code == "AccSortViolation");
    auto small = parse_analysed("sort A; fun c : A -> A -> A arity 1 small acc {1};");
    CHECK(small->analysis->acc().validate_acc(*small->problem.symbol("c"))[0].code == "SmallAccNonempty");
    auto range = parse_analysed("sort A; fun c : A -> A arity 1 acc {2};");
    CHECK_FALSE(range->analysis->acc().validate_acc(*range->problem.symbol("c")).empty());
}

TEST_CASE("basic sorts") {
    auto L = parse_analysed(kOrd);
    CHECK(L->analysis->acc().is_basic("N"));
    CHECK_FALSE(L->analysis->acc().is_basic("O"));
    CHECK(L->analysis->acc().is_basic("A"));
    auto chain = parse_analysed("sorts L, E; sortprec L > E; fun nil : L arity 0; "
                                "fun cons : E -> L -> L arity 2 acc {1, 2};");
    CHECK(chain->analysis->acc().is_basic("L"));
    auto mutual = parse_analysed("sorts P, Q; fun p : Q -> P arity 1 acc {1}; fun q : P -> Q arity 1 acc {1};");
    CHECK_FALSE(mutual->analysis->acc().is_basic("P"));
    CHECK_FALSE(mutual->analysis->acc().is_basic("Q"));
}

TEST_CASE("accessible subterms") {
    auto L = parse_analysed(kOrd);
    auto ts = terms_in(kOrd, {"suc(x)", "x", "lim(y)", "y", "zero", "suc(suc(x))", "s(n)"});
    const auto& acc = L->analysis->acc();
    CHECK(contains(acc.acc_set(ts[0]), ts[0]));
    CHECK(contains(acc.acc_set(ts[0]), ts[1]));
    CHECK(contains(acc.acc_set(ts[2]), ts[3]));
    CHECK(acc.acc_set(ts[4]).size() == 1);
    CHECK(contains(acc.acc_set(ts[5]), ts[1]));
    CHECK(alpha_eq(acc.acc_set(ts[5]).front(), ts[5]));
    auto bs = acc.basic_subterms(ts[6]);
    CHECK(alpha_eq(bs.front(), ts[6]));
    CHECK(contains(bs, terms_in(kOrd, {"n"})[0]));
}

TEST_CASE("structural ordering") {
    auto L = parse_analysed(kOrd);
    const auto& acc = L->analysis->acc();
    auto ts = terms_in(kOrd, {"lim(y)", "y n", "y", "suc(x)", "x", "n", "y m"});
    VarSet xn{ts[5]};
    SUBCASE("the recursor witness") {
        auto w = acc.struct_smaller(xn, ts[0], ts[1]);
        REQUIRE(w.has_value());
        CHECK(alpha_eq(w->v, ts[2]));
        REQUIRE(w->xs.size() == 1);
        CHECK(acc.check_struct(xn, ts[0], ts[1], *w));
    }
    SUBCASE("no variables applied") { CHECK(acc.struct_smaller(VarSet{}, ts[3], ts[4]).has_value()); }
    SUBCASE("types must agree") { CHECK_FALSE(acc.struct_smaller(xn, ts[0], ts[2]).has_value()); }
    SUBCASE("applied variables must belong to X") {
        CHECK_FALSE(acc.struct_smaller(VarSet{}, ts[0], ts[1]).has_value());
        CHECK_FALSE(acc.struct_smaller(xn, ts[0], ts[6]).has_value());
    }
    SUBCASE("candidates") {
        auto cs = acc.struct_candidates(xn, ts[0]);
        bool found = false;
        for (const auto& [w, wit] : cs) found = found || alpha_eq(w, ts[1]);
        CHECK(found);
    }
}
