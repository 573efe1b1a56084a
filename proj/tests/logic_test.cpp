#include <doctest.h>

#include "hahn/logic.hpp"
#include "hahn/random_gen.hpp"

using namespace hahn;
using namespace hahn::mso;

namespace {

const char* kDivides =
    "forall S. (0 in S & forall x. (x in S -> x+m in S)) -> n in S";

bool int_divides(Nat m, Nat n) { return m == 0 ? n == 0 : n % m == 0; }

}  // namespace

TEST_CASE("the divisibility formula parses into the expected shape") {
    FormulaPtr f = parse_formula(kDivides);
    REQUIRE(f->kind == FormulaKind::ForallSet);
    CHECK(f->var == "S");
    REQUIRE(f->a->kind == FormulaKind::Implies);
    CHECK(f->a->a->kind == FormulaKind::And);
    CHECK(f->a->b->kind == FormulaKind::Member);
    CHECK(f->equals(*divides_formula()));
    FreeVariables free = free_variables(*f);
    REQUIRE(free.elems.size() == 2);
    CHECK(free.sets.empty());
}

TEST_CASE("evenness parses with an element quantifier") {
    FormulaPtr f = parse_formula("exists x. x+x = y");
    REQUIRE(f->kind == FormulaKind::ExistsElem);
    CHECK(f->a->kind == FormulaKind::Eq);
    Assignment asg;
    asg.elems["y"] = 6;
    CHECK(eval(BoundedStructure{16}, *f, asg, Strategy::Enum));
    asg.elems["y"] = 7;
    CHECK(!eval(BoundedStructure{16}, *f, asg, Strategy::Enum));
}

TEST_CASE("sort errors are reported with positions") {
    CHECK_THROWS_AS(parse_formula("x in y"), ParseError);
    CHECK_THROWS_AS(parse_formula("X + y = z"), ParseError);
    CHECK_THROWS_AS(parse_formula("forall x. x in x"), ParseError);
    try {
        parse_formula("x in y");
        FAIL("expected a sort error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
}

TEST_CASE("syntax errors") {
    CHECK_THROWS_AS(parse_formula(""), ParseError);
    CHECK_THROWS_AS(parse_formula("forall . x = x"), ParseError);
    CHECK_THROWS_AS(parse_formula("x ="), ParseError);
    CHECK_THROWS_AS(parse_formula("(x = x"), ParseError);
    CHECK_THROWS_AS(parse_formula("x = x)"), ParseError);
    CHECK_THROWS_AS(parse_formula("x - y = z"), ParseError);
}

TEST_CASE("divisibility evaluates correctly under both strategies") {
    FormulaPtr f = parse_formula(kDivides);
    BoundedStructure s{16};
    Assignment asg;
    asg.elems["m"] = 3;
    asg.elems["n"] = 6;
    CHECK(eval(s, *f, asg, Strategy::Enum));
    CHECK(eval(s, *f, asg, Strategy::Lfp));
    asg.elems["n"] = 7;
    CHECK(!eval(s, *f, asg, Strategy::Enum));
    CHECK(!eval(s, *f, asg, Strategy::Lfp));
}

TEST_CASE("the degenerate one-point structure") {
    FormulaPtr f = parse_formula(kDivides);
    Assignment asg;
    asg.elems["m"] = 0;
    asg.elems["n"] = 0;
    CHECK(eval(BoundedStructure{1}, *f, asg, Strategy::Enum));
    CHECK(eval(BoundedStructure{1}, *f, asg, Strategy::Lfp));
}

TEST_CASE("mso_divides matches integer divisibility") {
    CHECK(mso_divides(4, 12, 32, Strategy::Lfp));
    CHECK(!mso_divides(0, 5, 32, Strategy::Lfp));
    CHECK(mso_divides(0, 0, 32, Strategy::Lfp));
    CHECK(mso_divides(7, 7, 32, Strategy::Lfp));
    CHECK_THROWS_AS(mso_divides(32, 5, 32, Strategy::Lfp), BoundError);
    CHECK_THROWS_AS(mso_divides(5, 40, 32, Strategy::Lfp), BoundError);

    for (Nat m = 0; m < 10; ++m) {
        for (Nat n = 0; n < 10; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            CHECK(mso_divides(m, n, 32, Strategy::Lfp) == int_divides(m, n));
        }
    }
}

TEST_CASE("enumeration and fixed point agree on small structures") {
    for (Nat bound = 1; bound <= 10; ++bound) {
        for (Nat m = 0; m < bound; ++m) {
            for (Nat n = 0; n < bound; ++n) {
                CAPTURE(bound);
                CAPTURE(m);
                CAPTURE(n);
                CHECK(mso_divides(m, n, bound, Strategy::Enum) ==
                      mso_divides(m, n, bound, Strategy::Lfp));
            }
        }
    }
}

TEST_CASE("consecutive products") {
    CHECK(mso_consec_mult(2, 6, 32));
    CHECK(!mso_consec_mult(2, 12, 32));
    CHECK(mso_consec_mult(0, 0, 8));
    CHECK_THROWS_AS(mso_consec_mult(5, 30, 20), BoundError);
    // Sweep against the oracle.
    for (Nat m = 0; m <= 5; ++m) {
        for (Nat n = 0; n < 40; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            CHECK(mso_consec_mult(m, n, 40) == (n == m * (m + 1)));
        }
    }
}

TEST_CASE("general products through bounded addition") {
    CHECK(mso_mult(2, 3, 6, 64));
    CHECK(!mso_mult(2, 3, 7, 64));
    CHECK(mso_mult(0, 9, 0, 128));
    CHECK_THROWS_AS(mso_mult(10, 10, 100, 64), BoundError);
    MsoSession session(128, Strategy::Lfp);
    for (Nat m = 0; m <= 4; ++m) {
        for (Nat k = 0; k <= 4; ++k) {
            for (Nat n = 0; n < 30; ++n) {
                CAPTURE(m);
                CAPTURE(k);
                CAPTURE(n);
                CHECK(session.mult(m, k, n) == (n == m * k));
            }
        }
    }
}

TEST_CASE("the least closed set is the multiples below the bound") {
    SetValue set = least_closed_set(20, {0}, {3});
    for (Nat x = 0; x < 20; ++x) CHECK(set[x] == (x % 3 == 0));
    // Empty base closes to nothing.
    SetValue empty = least_closed_set(10, {}, {2});
    for (Nat x = 0; x < 10; ++x) CHECK(!empty[x]);
    // Step 0 keeps just the base.
    SetValue fixed = least_closed_set(10, {4}, {0});
    for (Nat x = 0; x < 10; ++x) CHECK(fixed[x] == (x == 4));

    // The set-universal holds exactly on the fixed point.
    FormulaPtr f = parse_formula(kDivides);
    for (Nat n = 0; n < 20; ++n) {
        Assignment asg;
        asg.elems["m"] = 3;
        asg.elems["n"] = n;
        CHECK(eval(BoundedStructure{20}, *f, asg, Strategy::Lfp) == set[n]);
    }
}

TEST_CASE("the lfp strategy rejects shapes outside the guarded Horn fragment") {
    Assignment asg;
    asg.elems["n"] = 0;
    CHECK_THROWS_AS(
        eval(BoundedStructure{4}, *parse_formula("forall S. n in S"), asg, Strategy::Lfp),
        StrategyError);
    CHECK_THROWS_AS(
        eval(BoundedStructure{4}, *parse_formula("exists S. 0 in S"), {}, Strategy::Lfp),
        StrategyError);
    CHECK_THROWS_AS(
        eval(BoundedStructure{4},
             *parse_formula("forall S. (0 in S | 1 in S) -> 0 in S"), {}, Strategy::Lfp),
        StrategyError);
    // The same shapes evaluate fine by enumeration.
    CHECK(!eval(BoundedStructure{4}, *parse_formula("forall S. n in S"), asg, Strategy::Enum));
    CHECK(eval(BoundedStructure{4}, *parse_formula("exists S. 0 in S"), {}, Strategy::Enum));
}

TEST_CASE("enumeration is refused at infeasible bounds") {
    CHECK_THROWS_AS(
        eval(BoundedStructure{32}, *parse_formula("exists S. 0 in S"), {}, Strategy::Enum),
        BoundError);
}

TEST_CASE("open formulas and bad assignments are rejected") {
    FormulaPtr f = parse_formula("x in S");
    CHECK_THROWS_AS(eval(BoundedStructure{4}, *f, {}, Strategy::Enum), UsageError);
    Assignment asg;
    asg.elems["x"] = 9;
    asg.sets["S"] = SetValue(4, false);
    CHECK_THROWS_AS(eval(BoundedStructure{4}, *f, asg, Strategy::Enum), UsageError);
    asg.elems["x"] = 1;
    asg.sets["S"] = SetValue(3, false);
    CHECK_THROWS_AS(eval(BoundedStructure{4}, *f, asg, Strategy::Enum), UsageError);
    asg.sets["S"] = SetValue(4, false);
    CHECK(!eval(BoundedStructure{4}, *f, asg, Strategy::Enum));
}

TEST_CASE("guarded partial addition falsifies overflowing sum atoms") {
    BoundedStructure s{4};
    CHECK(!eval(s, *parse_formula("1+3 = 0"), {}, Strategy::Enum));
    CHECK(!eval(s, *parse_formula("0 < 2+2"), {}, Strategy::Enum));
    CHECK(eval(s, *parse_formula("1+2 = 3"), {}, Strategy::Enum));
    // A numeral outside the domain never denotes.
    CHECK(!eval(s, *parse_formula("7 = 7"), {}, Strategy::Enum));
    // Membership is the exception: out-of-domain values assert nothing.
    Assignment asg;
    asg.sets["S"] = SetValue(4, false);
    CHECK(eval(s, *parse_formula("2+2 in S"), asg, Strategy::Enum));
    CHECK(!eval(s, *parse_formula("1+2 in S"), asg, Strategy::Enum));
}

TEST_CASE("set assignments feed membership atoms") {
    SetValue evens(8, false);
    for (Nat x = 0; x < 8; x += 2) evens[x] = true;
    Assignment asg;
    asg.sets["S"] = evens;
    CHECK(eval(BoundedStructure{8}, *parse_formula("exists x. x+2 in S"), asg, Strategy::Enum));
    // The out-of-domain step at x=6 holds vacuously, so the evens are
    // +2-closed in the bounded sense.
    CHECK(eval(BoundedStructure{8}, *parse_formula("forall x. x in S -> x+2 in S"), asg,
               Strategy::Enum));
    CHECK(eval(BoundedStructure{8}, *parse_formula("4 in S"), asg, Strategy::Enum));
    CHECK(!eval(BoundedStructure{8}, *parse_formula("5 in S"), asg, Strategy::Enum));
}

namespace {

FormulaPtr random_formula(gen::Rng& rng, int depth) {
    const std::vector<std::string> elem_vars = {"x", "y", "z"};
    const std::vector<std::string> set_vars = {"S", "T"};
    auto random_term = [&]() {
        mso::Term t;
        std::size_t n = 1 + rng.index(2);
        for (std::size_t i = 0; i < n; ++i) {
            if (rng.flip())
                t.parts.push_back(mso::Term::Part{true, static_cast<Nat>(rng.index(5)), {}});
            else
                t.parts.push_back(mso::Term::Part{false, 0, elem_vars[rng.index(3)]});
        }
        return t;
    };
    if (depth == 0 || rng.index(4) == 0) {
        switch (rng.index(3)) {
            case 0: return Formula::member(random_term(), set_vars[rng.index(2)]);
            case 1: return Formula::eq(random_term(), random_term());
            default: return Formula::less(random_term(), random_term());
        }
    }
    switch (rng.index(6)) {
        case 0: return Formula::negation(random_formula(rng, depth - 1));
        case 1:
            return Formula::conj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 2:
            return Formula::disj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 3:
            return Formula::implies(random_formula(rng, depth - 1),
                                    random_formula(rng, depth - 1));
        case 4:
            return Formula::iff(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        default: {
            bool set_sorted = rng.flip();
            std::string var = set_sorted ? set_vars[rng.index(2)] : elem_vars[rng.index(3)];
            FormulaKind kind = rng.flip()
                                   ? (set_sorted ? FormulaKind::ForallSet : FormulaKind::ForallElem)
                                   : (set_sorted ? FormulaKind::ExistsSet : FormulaKind::ExistsElem);
            return Formula::quantifier(kind, var, random_formula(rng, depth - 1));
        }
    }
}

}  // namespace

TEST_CASE("printing round-trips on a formula corpus") {
    std::vector<FormulaPtr> corpus;
    corpus.push_back(parse_formula(kDivides));
    corpus.push_back(parse_formula("exists x. x+x = y"));
    corpus.push_back(divides_formula());
    corpus.push_back(consec_product_formula(2, 6));
    corpus.push_back(parse_formula("!(x = y) & (x < y | y < x)"));
    corpus.push_back(parse_formula("forall x. forall y. x+y = y+x"));
    gen::Rng rng(43);
    while (corpus.size() < 50) corpus.push_back(random_formula(rng, 3));
    for (const FormulaPtr& f : corpus) {
        CAPTURE(f->str());
        FormulaPtr reparsed = parse_formula(f->str());
        CHECK(reparsed->equals(*f));
    }
}

TEST_CASE("strategy names") {
    CHECK(strategy_from_string("lfp") == Strategy::Lfp);
    CHECK(strategy_from_string("enum") == Strategy::Enum);
    CHECK_THROWS_AS(strategy_from_string("magic"), UsageError);
}
