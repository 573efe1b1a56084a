#include <doctest.h>

#include "hahn/algebra.hpp"
#include "hahn/random_gen.hpp"

using namespace hahn;

namespace {

// Brute-force inverse oracle, independent of the extended-Euclid path in
// the implementation.
BigInt brute_force_inverse(const BigInt& c, const BigInt& p) {
    for (BigInt x = 0; x < p; ++x) {
        if ((c * x) % p == 1) return x;
    }
    throw std::runtime_error("no inverse");
}

}  // namespace

TEST_CASE("group addition on all kinds") {
    CHECK(GroupElement::from_int(2) + GroupElement::from_int(3) == GroupElement::from_int(5));
    CHECK(GroupElement::from_rat(make_rat(1, 2)) + GroupElement::from_rat(make_rat(1, 3)) ==
          GroupElement::from_rat(make_rat(5, 6)));
    CHECK(GroupElement::from_lex2(1, 5) + GroupElement::from_lex2(0, -5) ==
          GroupElement::from_lex2(1, 0));
}

TEST_CASE("group comparison is total and lexicographic") {
    CHECK(GroupElement::from_lex2(0, 100).compare(GroupElement::from_lex2(1, -100)) ==
          std::strong_ordering::less);
    CHECK(GroupElement::parse(GroupKind::Rat, "2/3").compare(
              GroupElement::parse(GroupKind::Rat, "3/4")) == std::strong_ordering::less);
    CHECK(GroupElement::from_int(7).compare(GroupElement::from_int(7)) ==
          std::strong_ordering::equal);
}

TEST_CASE("mixed kinds are rejected") {
    CHECK_THROWS_AS(GroupElement::from_int(1) + GroupElement::from_rat(BigRat(1)), UsageError);
    CHECK_THROWS_AS(GroupElement::from_int(1).compare(GroupElement::from_lex2(1, 0)), UsageError);
    CHECK_THROWS_AS(Coefficient::from_rat(BigRat(1)) + Coefficient::fp(1, 7), UsageError);
    CHECK_THROWS_AS(Coefficient::fp(1, 7) + Coefficient::fp(1, 11), UsageError);
}

TEST_CASE("field inverses") {
    Coefficient c = Coefficient::from_rat(make_rat(3, 4));
    CHECK(c.inverse() == Coefficient::from_rat(make_rat(4, 3)));
    CHECK(Coefficient::fp(3, 7).inverse() == Coefficient::fp(5, 7));
    CHECK(Coefficient::fp(3, 7).inverse().residue() == brute_force_inverse(3, 7));
    CHECK(Coefficient::from_rat(BigRat(1)).inverse() == Coefficient::from_rat(BigRat(1)));
    CHECK_THROWS_AS(Coefficient::from_rat(BigRat(0)).inverse(), DivisionByZeroError);
    CHECK_THROWS_AS(Coefficient::fp(0, 7).inverse(), DivisionByZeroError);
}

TEST_CASE("fp values normalize into [0, p)") {
    CHECK(Coefficient::fp(-1, 7) == Coefficient::fp(6, 7));
    CHECK(Coefficient::fp(15, 7) == Coefficient::fp(1, 7));
    CHECK(Coefficient::parse(FieldKind::Fp, 7, "-3") == Coefficient::fp(4, 7));
}

TEST_CASE("rationals stay normalized") {
    GroupElement g = GroupElement::parse(GroupKind::Rat, "4/6");
    CHECK(g.str() == "2/3");
    CHECK(GroupElement::parse(GroupKind::Rat, "-4/6").str() == "-2/3");
    CHECK(denominator(GroupElement::parse(GroupKind::Rat, "3").as_rat()) == 1);
    CHECK_THROWS_AS(GroupElement::parse(GroupKind::Rat, "1/0"), ParseError);
}

TEST_CASE("textual forms round-trip") {
    for (const char* text : {"-5", "0", "123456789012345678901234567890"}) {
        CHECK(GroupElement::parse(GroupKind::Int, text).str() == text);
    }
    CHECK(GroupElement::parse(GroupKind::Lex2, "(2,-1)").str() == "(2,-1)");
    CHECK(GroupElement::parse(GroupKind::Lex2, " ( 2 , -1 ) ").str() == "(2,-1)");
    CHECK_THROWS_AS(GroupElement::parse(GroupKind::Int, "1/2"), ParseError);
    CHECK_THROWS_AS(GroupElement::parse(GroupKind::Lex2, "3"), ParseError);
    CHECK_THROWS_AS(GroupElement::parse(GroupKind::Int, "abc"), ParseError);
}

TEST_CASE("group laws hold on random triples") {
    gen::Rng rng(7);
    for (GroupKind kind : {GroupKind::Int, GroupKind::Rat, GroupKind::Lex2}) {
        GroupElement zero = GroupElement::zero(kind);
        for (int trial = 0; trial < 1000; ++trial) {
            GroupElement a = gen::random_exponent(rng, kind);
            GroupElement b = gen::random_exponent(rng, kind);
            GroupElement c = gen::random_exponent(rng, kind);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a + b == b + a);
            CHECK(a + zero == a);
            CHECK(a + (-a) == zero);
            // Translation invariance of the order.
            bool lt = a.compare(b) == std::strong_ordering::less;
            bool lt_shifted = (a + c).compare(b + c) == std::strong_ordering::less;
            CHECK(lt == lt_shifted);
        }
    }
}

TEST_CASE("field laws hold on random triples") {
    gen::Rng rng(11);
    struct Config {
        FieldKind kind;
        BigInt modulus;
    };
    for (Config config : {Config{FieldKind::Rat, 0}, Config{FieldKind::Fp, 7},
                          Config{FieldKind::Fp, 2}}) {
        Coefficient zero = Coefficient::zero(config.kind, config.modulus);
        Coefficient one = Coefficient::one(config.kind, config.modulus);
        for (int trial = 0; trial < 1000; ++trial) {
            Coefficient a = gen::random_coefficient(rng, config.kind, config.modulus, false);
            Coefficient b = gen::random_coefficient(rng, config.kind, config.modulus, false);
            Coefficient c = gen::random_coefficient(rng, config.kind, config.modulus, false);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a + b == b + a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + zero == a);
            CHECK(a * one == a);
            CHECK(a + (-a) == zero);
            if (!a.is_zero()) CHECK(a * a.inverse() == one);
        }
    }
}

TEST_CASE("kind names round-trip") {
    for (GroupKind g : {GroupKind::Int, GroupKind::Rat, GroupKind::Lex2})
        CHECK(group_kind_from_string(to_string(g)) == g);
    for (FieldKind f : {FieldKind::Rat, FieldKind::Fp})
        CHECK(field_kind_from_string(to_string(f)) == f);
    CHECK_THROWS_AS(group_kind_from_string("real"), UsageError);
}
