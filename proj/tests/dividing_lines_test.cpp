#include <doctest.h>

#include "hahn/dividing_lines.hpp"
#include "hahn/interpretation.hpp"

using namespace hahn;
using namespace hahn::witness;

namespace {

const AlgebraContext kInt{GroupKind::Int, FieldKind::Rat, 0};

Series S(const char* text) { return Series::parse(text, kInt); }

GroupElement I(std::int64_t v) { return GroupElement::from_int(v); }

std::vector<GroupElement> ints(std::initializer_list<std::int64_t> values) {
    std::vector<GroupElement> out;
    for (auto v : values) out.push_back(I(v));
    return out;
}

Series tower_monomial(const BigInt& e) {
    return Series::monomial(GroupElement::from_int(e), Coefficient::from_rat(BigRat(1)));
}

}  // namespace

TEST_CASE("primes enumerate in order") {
    CHECK(nth_prime(0) == 2);
    CHECK(nth_prime(1) == 3);
    CHECK(nth_prime(2) == 5);
    CHECK(nth_prime(3) == 7);
    CHECK(nth_prime(10) == 31);
}

TEST_CASE("nested chains build partial sums") {
    std::vector<Series> chain = sop_chain(ints({0, 1, 2}));
    REQUIRE(chain.size() == 3);
    CHECK(chain[0] == S("1"));
    CHECK(chain[1] == S("1 + t"));
    CHECK(chain[2] == S("1 + t + t^2"));

    std::vector<Series> neg = sop_chain(ints({-1, 0}));
    CHECK(neg[0] == S("t^(-1)"));
    CHECK(neg[1] == S("t^(-1) + 1"));

    CHECK_THROWS_AS(sop_chain(ints({0})), UsageError);
    CHECK_THROWS_AS(sop_chain(ints({1, 1})), UsageError);
    CHECK_THROWS_AS(sop_chain(ints({2, 1})), UsageError);
}

TEST_CASE("chain verification detects strict nesting and its failures") {
    std::vector<GroupElement> thetas;
    for (std::int64_t i = 0; i < 10; ++i) thetas.push_back(I(i));
    std::vector<Series> chain = sop_chain(thetas);
    std::vector<Series> universe;
    for (std::int64_t i = 0; i < 20; ++i) universe.push_back(tower_monomial(i));
    universe.push_back(S("1 + t"));  // non-monomials never satisfy the relation
    universe.push_back(S("5*t"));
    CHECK(verify_sop(chain, universe));

    std::vector<Series> reversed(chain.rbegin(), chain.rend());
    CHECK(!verify_sop(reversed, universe));

    std::vector<Series> duplicated = chain;
    duplicated[3] = duplicated[2];  // no strict growth between equal entries
    CHECK(!verify_sop(duplicated, universe));
}

TEST_CASE("level-0 families are capped prime powers") {
    TowerCaps caps{2, 3, 4096};
    CHECK(prime_tower_fragment(0, 2, caps) == std::set<BigInt>{5, 25, 125});
    CHECK(prime_tower_fragment(0, 0, TowerCaps{2, 1, 4096}) == std::set<BigInt>{2});
    CHECK_THROWS_AS(prime_tower_fragment(3, 0, caps), UsageError);
}

TEST_CASE("level-1 families take powers from the level below") {
    // Outer index up to 1, inner exponent index exactly 1: bases 2 and 3
    // raised to 5.
    TowerCaps caps{1, 1, 4096};
    CHECK(prime_tower_fragment(1, 2, caps) == std::set<BigInt>{32, 243});
    // The bit cap filters what would not fit: 32 needs 6 bits, 243 needs 8.
    TowerCaps tight{1, 1, 6};
    CHECK(prime_tower_fragment(1, 2, tight) == std::set<BigInt>{32});
    CHECK(prime_tower_fragment(1, 2, TowerCaps{1, 1, 5}).empty());
}

TEST_CASE("towers compute right-associated powers") {
    CHECK(tower_element({0, 1}) == 8);
    CHECK(tower_element({1}) == 3);
    CHECK(tower_element({0, 1, 2}) == pow_nat(2, 243));
    CHECK(tower_element({2, 2}) == 3125);
    CHECK_THROWS_AS(tower_element({0, 1, 2, 0}), UsageError);
    CHECK_THROWS_AS(tower_element({}), UsageError);
    CHECK_THROWS_AS(tower_element({0, 2, 2}, 100), GuardError);  // 5^5 = 3125 > 100
}

TEST_CASE("towers land in every family along their index path") {
    TowerCaps caps;
    CHECK(verify_path_intersection({0, 1}, caps));
    CHECK(verify_path_intersection({2, 0}, caps));
    CHECK(verify_path_intersection({}, caps));
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            for (std::size_t c = 0; c < 3; ++c) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(c);
                CHECK(verify_path_intersection({a, b, c}, caps));
            }
        }
    }
}

TEST_CASE("families at one level and different columns are disjoint") {
    TowerCaps caps;
    CHECK(verify_row_disjointness(0, 0, 1, caps));
    CHECK(verify_row_disjointness(1, 0, 1, caps));
    CHECK(verify_row_disjointness(2, 1, 2, TowerCaps{1, 2, 2048}));
    CHECK_THROWS_AS(verify_row_disjointness(0, 1, 1, caps), UsageError);
}

TEST_CASE("factorization recovers construction indices") {
    auto f0 = factor_tower_element(243, 0);
    REQUIRE(f0.has_value());
    CHECK(f0->prime_indices == std::vector<std::size_t>{1});
    CHECK(f0->innermost_exponent == 5);

    auto f1 = factor_tower_element(pow_nat(2, 243), 1);
    REQUIRE(f1.has_value());
    CHECK(f1->prime_indices == std::vector<std::size_t>{0, 1});
    CHECK(f1->innermost_exponent == 5);

    CHECK(!factor_tower_element(12, 0).has_value());   // not a prime power
    CHECK(!factor_tower_element(1, 0).has_value());
    CHECK(!factor_tower_element(pow_nat(2, 12), 1).has_value());  // 12 is no prime power

    TowerCaps caps;
    for (std::size_t level = 0; level <= 2; ++level) {
        for (std::size_t j = 0; j < 3; ++j) {
            CAPTURE(level);
            CAPTURE(j);
            CHECK(audit_fragment(prime_tower_fragment(level, j, caps), level, j, caps));
        }
    }
}

TEST_CASE("grid parameters sum the fragments") {
    WitnessGrid grid = tp2_grid(1, 2, TowerCaps{2, 3, 4096});
    REQUIRE(grid.cells.size() == 1);
    CHECK(grid.cells[0][0].parameter == S("t^2 + t^4 + t^8"));
    CHECK(grid.cells[0][1].parameter == S("t^3 + t^9 + t^27"));

    WitnessGrid empty = tp2_grid(0, 3, TowerCaps{});
    CHECK(empty.cells.empty());
    CHECK(all_paths(0, 3).empty());

    WitnessGrid full = tp2_grid(2, 3, TowerCaps{});
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t k = j + 1; k < 3; ++k) {
                std::set<BigInt> intersection;
                for (const BigInt& v : full.cells[i][j].fragment)
                    if (full.cells[i][k].fragment.count(v)) intersection.insert(v);
                CHECK(intersection.empty());
            }
        }
    }
}

TEST_CASE("grid verification covers paths and row pairs") {
    WitnessGrid grid = tp2_grid(2, 2, TowerCaps{});
    Report r = verify_tp2(grid, all_paths(2, 2));
    CHECK(r.checks.size() == 4 + 2);
    CHECK(r.all_pass());

    WitnessGrid row = tp2_grid(1, 3, TowerCaps{});
    Report r2 = verify_tp2(row, all_paths(1, 3));
    CHECK(r2.checks.size() == 3 + 3);
    CHECK(r2.all_pass());

    // Negative control: duplicating a column breaks row inconsistency.
    WitnessGrid corrupted = tp2_grid(1, 3, TowerCaps{});
    corrupted.cells[0][1] = corrupted.cells[0][0];
    Report r3 = verify_tp2(corrupted, {});
    CHECK(!r3.all_pass());
}

TEST_CASE("subset sums shatter their monomials") {
    ShatterInstance inst = subset_sum_instance(10);
    CHECK(inst.params.size() == 1024);
    CHECK(inst.params.at(0).is_zero());

    std::vector<Series> universe;
    for (std::int64_t i = 0; i < 20; ++i) universe.push_back(tower_monomial(i));
    for (std::int64_t i = 0; i < 5; ++i)
        universe.push_back(Series::monomial(I(i), Coefficient::from_rat(BigRat(2))));
    for (std::int64_t i = 0; i < 5; ++i)
        universe.push_back(tower_monomial(i) + tower_monomial(i + 10));
    CHECK(universe.size() == 30);
    CHECK(check_shatters(inst, universe, true));
    CHECK(check_shatters(inst, universe, false));

    // A missing parameter is a usage error, per the instance contract.
    ShatterInstance broken = inst;
    broken.params.erase(17);
    CHECK_THROWS_AS(check_shatters(broken, universe, true), UsageError);

    // A wrong parameter fails the trace check.
    ShatterInstance wrong = inst;
    wrong.params[3] = wrong.params.at(5);
    CHECK(!check_shatters(wrong, universe, false));

    // The empty instance shatters trivially with the zero parameter.
    ShatterInstance empty;
    empty.params.emplace(0, Series());
    CHECK(check_shatters(empty, universe, true));
}

TEST_CASE("transposition exchanges points and parameters") {
    ShatterInstance base = subset_sum_instance(8);
    CHECK(check_shatters(base, {}, false));
    ShatterInstance flipped = opposite_instance(base, 3);
    REQUIRE(flipped.points.size() == 3);
    CHECK(flipped.params.size() == 8);
    CHECK(check_shatters(flipped, flipped.points, false));

    ShatterInstance two = opposite_instance(subset_sum_instance(2), 1);
    CHECK(two.points.size() == 1);
    CHECK(check_shatters(two, two.points, false));

    ShatterInstance zero = opposite_instance(subset_sum_instance(1), 0);
    CHECK(zero.points.empty());
    CHECK(check_shatters(zero, {}, false));

    CHECK_THROWS_AS(opposite_instance(subset_sum_instance(4), 3), UsageError);
    ShatterInstance gutted = subset_sum_instance(8);
    gutted.params.erase(0xAA);  // the principal-filter mask for row 0
    CHECK_THROWS_AS(opposite_instance(gutted, 3), UsageError);
}
