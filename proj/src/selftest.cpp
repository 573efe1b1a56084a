#include "hahn/selftest.hpp"

#include <chrono>
#include <sstream>

#include "hahn/dividing_lines.hpp"
#include "hahn/interpretation.hpp"
#include "hahn/logic.hpp"
#include "hahn/random_gen.hpp"
#include "hahn/series.hpp"

namespace hahn::selftest {

namespace {

using Clock = std::chrono::steady_clock;

struct Failure {
    std::string message;
};

class Criterion {
public:
    explicit Criterion(std::string name) : name_(std::move(name)), start_(Clock::now()) {}

    CriterionResult finish(bool pass, std::string detail, double budget_seconds = 0.0) {
        CriterionResult r;
        r.name = std::move(name_);
        r.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
        r.pass = pass;
        r.detail = std::move(detail);
        if (pass && budget_seconds > 0.0 && r.seconds > budget_seconds) {
            r.pass = false;
            r.detail = "exceeded the " + std::to_string(budget_seconds) + "s budget";
        }
        return r;
    }

private:
    std::string name_;
    Clock::time_point start_;
};

std::vector<AlgebraContext> all_contexts() {
    std::vector<AlgebraContext> out;
    for (GroupKind g : {GroupKind::Int, GroupKind::Rat, GroupKind::Lex2}) {
        out.push_back(AlgebraContext{g, FieldKind::Rat, 0});
        out.push_back(AlgebraContext{g, FieldKind::Fp, 7});
    }
    return out;
}

void check(bool condition, const std::string& message) {
    if (!condition) throw Failure{message};
}

}  // namespace

CriterionResult field_axioms(std::uint64_t seed) {
    Criterion criterion("hahn-field-axioms");
    constexpr std::size_t kTrials = 500;
    std::size_t checked = 0;
    try {
        for (const AlgebraContext& ctx : all_contexts()) {
            gen::Rng rng(seed);
            std::string where = to_string(ctx.group) + "/" + to_string(ctx.field);
            Series one = Series::constant(ctx.coeff_one(), ctx.group);
            for (std::size_t trial = 0; trial < kTrials; ++trial) {
                std::string at = where + " trial " + std::to_string(trial);
                Series f = gen::random_series(rng, ctx, 8);
                Series g = gen::random_series(rng, ctx, 8);
                Series h = gen::random_series(rng, ctx, 8);

                // Ring axioms, as exact equality of canonical forms.
                check((f + g) + h == f + (g + h), at + ": + not associative");
                check(f + g == g + f, at + ": + not commutative");
                check((f * g) * h == f * (g * h), at + ": * not associative");
                check(f * g == g * f, at + ": * not commutative");
                check(f * (g + h) == f * g + f * h, at + ": * not distributive");
                check(f + Series() == f, at + ": additive identity");
                check(f * one == f, at + ": multiplicative identity");
                check((f + (-f)).is_zero(), at + ": additive inverse");

                // Valuation axioms.
                check(f.valuation().is_infinite() == f.is_zero(), at + ": V0");
                check(f.valuation() + g.valuation() == (f * g).valuation(), at + ": V1");
                Valuation vsum = (f + g).valuation();
                check(vsum >= f.valuation() || vsum >= g.valuation(), at + ": V2");

                // Truncation identities.
                GroupElement delta = gen::random_exponent(rng, ctx.group);
                Series lower = f.truncate(delta);
                Series upper = f - lower;
                check(lower + upper == f, at + ": truncation split");
                check(lower.is_zero() ||
                          lower.terms().back().exp.compare(delta) == std::strong_ordering::less,
                      at + ": truncated part reaches the cut");
                check(upper.is_zero() ||
                          upper.terms().front().exp.compare(delta) != std::strong_ordering::less,
                      at + ": remainder dips below the cut");
                check(lower.truncate(delta) == lower, at + ": truncation idempotent");

                // Decomposition into purely infinite + constant + infinitesimal.
                Decomposition d = f.decompose();
                Series constant_part = Series::constant(d.constant, ctx.group);
                check(d.purely_infinite + constant_part + d.infinitesimal == f,
                      at + ": decomposition resum");
                check(d.purely_infinite.predicates().in_V, at + ": low part not purely infinite");
                check(d.infinitesimal.predicates().in_little_o,
                      at + ": high part not infinitesimal");
                check((constant_part + d.infinitesimal).predicates().in_O,
                      at + ": bounded part not bounded");
                ++checked;
            }
        }
    } catch (const Failure& f) {
        return criterion.finish(false, f.message);
    }
    return criterion.finish(true, std::to_string(checked) + " random series checked across 6 configurations",
                            10.0);
}

CriterionResult mso_arithmetic(std::uint64_t) {
    Criterion criterion("mso-arithmetic");
    try {
        // Divisibility agrees with the integer oracle at bound 64.
        for (mso::Nat m = 0; m < 24; ++m) {
            for (mso::Nat n = 0; n < 24; ++n) {
                bool oracle = m == 0 ? n == 0 : n % m == 0;
                bool defined = mso::mso_divides(m, n, 64, mso::Strategy::Lfp);
                check(defined == oracle,
                      "divisibility m=" + std::to_string(m) + " n=" + std::to_string(n) +
                          " got " + (defined ? "true" : "false"));
            }
        }

        // Multiplication identifies the product uniquely at bound 200.
        mso::MsoSession session(200, mso::Strategy::Lfp);
        for (mso::Nat m = 0; m <= 6; ++m) {
            for (mso::Nat k = 0; k <= 6; ++k) {
                std::size_t hits = 0;
                mso::Nat found = 0;
                for (mso::Nat n = 0; n < 200; ++n) {
                    if (session.mult(m, k, n)) {
                        ++hits;
                        found = n;
                    }
                }
                check(hits == 1, "m=" + std::to_string(m) + " k=" + std::to_string(k) +
                                     " matched " + std::to_string(hits) + " products");
                check(found == m * k, "m=" + std::to_string(m) + " k=" + std::to_string(k) +
                                          " identified " + std::to_string(found));
            }
        }

        // The enumeration and fixed-point strategies agree wherever both run.
        for (mso::Nat bound = 1; bound <= 14; ++bound) {
            for (mso::Nat m = 0; m < bound; ++m) {
                for (mso::Nat n = 0; n < bound; ++n) {
                    bool via_enum = mso::mso_divides(m, n, bound, mso::Strategy::Enum);
                    bool via_lfp = mso::mso_divides(m, n, bound, mso::Strategy::Lfp);
                    check(via_enum == via_lfp,
                          "strategies disagree at B=" + std::to_string(bound) +
                              " m=" + std::to_string(m) + " n=" + std::to_string(n));
                }
            }
        }
    } catch (const Failure& f) {
        return criterion.finish(false, f.message);
    }
    return criterion.finish(true,
                            "divisibility 24x24 @64, products 7x7 @200, strategies exhaustive @<=14",
                            60.0);
}

CriterionResult finite_interpretation(std::uint64_t seed) {
    Criterion criterion("finite-interpretation");
    try {
        AlgebraContext ctx{GroupKind::Int, FieldKind::Rat, 0};
        Series t = Series::monomial(GroupElement::from_int(1), ctx.coeff_one());

        interp::InterpretationConfig big(t, 32);
        Report r = interp::check_interpretation(big, 200, seed);
        check(r.all_pass(), "depth-32 interpretation failed: " + r.text());

        // Exhaustive membership transfer at depth 12: all 4096 subsets.
        interp::InterpretationConfig small(t, 12);
        for (std::uint64_t mask = 0; mask < (1u << 12); ++mask) {
            std::vector<std::size_t> subset;
            for (std::size_t j = 0; j < 12; ++j) {
                if ((mask >> j) & 1) subset.push_back(j);
            }
            Series encoded = interp::encode_subset(subset, small);
            for (std::size_t i = 0; i < 12; ++i) {
                bool expected = (mask >> i) & 1;
                check(interp::class_member(interp::iota(i, small), encoded) == expected,
                      "transfer failed at mask " + std::to_string(mask) + " i=" +
                          std::to_string(i));
            }
        }
    } catch (const Failure& f) {
        return criterion.finish(false, f.message);
    }
    return criterion.finish(true, "homomorphism+transfer @32 (200 trials), exhaustive @12 (4096 subsets)");
}

CriterionResult definability_equivalences(std::uint64_t seed) {
    Criterion criterion("definability-equivalences");
    try {
        AlgebraContext ctx{GroupKind::Rat, FieldKind::Rat, 0};
        gen::Rng rng(seed);

        // The truncation route to the support relation matches direct
        // membership.
        for (std::size_t trial = 0; trial < 500; ++trial) {
            Series a = rng.range(0, 4) == 0 ? gen::random_series(rng, ctx, 3)
                                            : gen::random_monomial(rng, ctx);
            Series b = gen::random_series(rng, ctx, 8);
            check(interp::support_rel(a, b) == interp::support_rel_direct(a, b),
                  "support relation routes disagree at trial " + std::to_string(trial) +
                      ": a=" + a.str() + " b=" + b.str());
        }

        // The two-sorted route matches direct membership.
        for (std::size_t trial = 0; trial < 500; ++trial) {
            Series f = gen::random_series(rng, ctx, 8);
            GroupElement gamma =
                (!f.is_zero() && rng.flip())
                    ? f.terms()[rng.index(f.size())].exp
                    : gen::random_exponent(rng, ctx.group);
            check(interp::exponent_rel(gamma, f) == interp::exponent_rel_direct(gamma, f),
                  "two-sorted routes disagree at trial " + std::to_string(trial) + ": gamma=" +
                      gamma.str() + " f=" + f.str());
        }

        // The complement-preservation test agrees with constancy, and
        // every negative verdict carries a verified witness.
        std::vector<Series> probes;
        for (int i = 0; i < 4; ++i) {
            Series p = gen::random_series(rng, ctx, 4, -1);
            if (!p.is_zero()) probes.push_back(p);
        }
        for (std::size_t trial = 0; trial < 300; ++trial) {
            Series f = gen::random_series(rng, ctx, 8, 1);
            auto result = interp::coeff_field_test(f, probes);
            check(result.verdict == f.predicates().in_k,
                  "verdict disagrees with constancy at trial " + std::to_string(trial) + ": f=" +
                      f.str());
            if (!result.verdict) {
                check(result.witness.has_value(), "false verdict without witness: f=" + f.str());
                check(result.witness->predicates().in_V,
                      "witness is not purely infinite: f=" + f.str());
                check(!(f * *result.witness).predicates().in_V,
                      "witness fails to violate the complement: f=" + f.str());
            }
        }
    } catch (const Failure& f) {
        return criterion.finish(false, f.message);
    }
    return criterion.finish(true, "500+500 relation instances, 300 complement verdicts, all matched");
}

CriterionResult sop_chain_nesting(std::uint64_t) {
    Criterion criterion("sop-chain");
    try {
        std::vector<GroupElement> thetas;
        for (int i = 0; i < 10; ++i) thetas.push_back(GroupElement::from_int(i));
        std::vector<Series> chain = witness::sop_chain(thetas);
        std::vector<Series> universe;
        for (int i = 0; i < 20; ++i)
            universe.push_back(
                Series::monomial(GroupElement::from_int(i), Coefficient::from_rat(BigRat(1))));
        check(witness::verify_sop(chain, universe),
              "length-10 chain is not strictly nested over the 20-monomial universe");
        std::vector<Series> reversed(chain.rbegin(), chain.rend());
        check(!witness::verify_sop(reversed, universe), "reversed chain verified");
    } catch (const Failure& f) {
        return criterion.finish(false, f.message);
    }
    return criterion.finish(true, "10 solution sets, 45 inclusion pairs strict");
}

CriterionResult tp2_grid_checks(std::uint64_t) {
    Criterion criterion("tp2-grid");
    try {
        witness::TowerCaps caps;
        witness::WitnessGrid grid = witness::tp2_grid(2, 3, caps);
        Report r = witness::verify_tp2(grid, witness::all_paths(2, 3));
        check(r.checks.size() == 9 + 6, "unexpected check count");
        check(r.all_pass(), "grid verification failed: " + r.text());

        for (std::size_t a0 = 0; a0 < 3; ++a0) {
            for (std::size_t a1 = 0; a1 < 3; ++a1) {
                check(witness::verify_path_intersection({a0, a1}, caps),
                      "no common element along (" + std::to_string(a0) + "," +
                          std::to_string(a1) + ")");
            }
        }
        for (std::size_t level = 0; level <= 2; ++level) {
            for (std::size_t j = 0; j < 3; ++j) {
                for (std::size_t k = j + 1; k < 3; ++k) {
                    check(witness::verify_row_disjointness(level, j, k, caps),
                          "families overlap at level " + std::to_string(level) + " columns " +
                              std::to_string(j) + "," + std::to_string(k));
                }
            }
        }
    } catch (const Failure& f) {
        return criterion.finish(false, f.message);
    }
    return criterion.finish(true,
                            "9 paths consistent, 6 row pairs inconsistent, families disjoint to level 2",
                            30.0);
}

CriterionResult shattering_checks(std::uint64_t) {
    Criterion criterion("shattering");
    try {
        witness::ShatterInstance inst = witness::subset_sum_instance(10);
        std::vector<Series> universe;
        for (int i = 0; i < 20; ++i)
            universe.push_back(
                Series::monomial(GroupElement::from_int(i), Coefficient::from_rat(BigRat(1))));
        for (int i = 0; i < 5; ++i)
            universe.push_back(
                Series::monomial(GroupElement::from_int(i), Coefficient::from_rat(BigRat(2))));
        for (int i = 0; i < 5; ++i)
            universe.push_back(universe[i] + universe[i + 10]);
        check(universe.size() == 30, "universe size drifted");
        check(witness::check_shatters(inst, universe, true),
              "subset sums fail to shatter exactly over the 30-element universe");

        witness::ShatterInstance base = witness::subset_sum_instance(8);
        check(witness::check_shatters(base, {}, false), "8-point base instance fails");
        witness::ShatterInstance transposed = witness::opposite_instance(base, 3);
        check(transposed.points.size() == 3, "transposed instance has wrong size");
        check(witness::check_shatters(transposed, transposed.points, false),
              "transposed instance fails to shatter");
    } catch (const Failure& f) {
        return criterion.finish(false, f.message);
    }
    return criterion.finish(true, "1024 parameters exact over 30 elements; 3-row transposition re-verified");
}

std::vector<CriterionResult> run_all(std::uint64_t seed) {
    std::vector<CriterionResult> results;
    results.push_back(field_axioms(seed));
    results.push_back(mso_arithmetic(seed));
    results.push_back(finite_interpretation(seed));
    results.push_back(definability_equivalences(seed));
    results.push_back(sop_chain_nesting(seed));
    results.push_back(tp2_grid_checks(seed));
    results.push_back(shattering_checks(seed));
    return results;
}

std::string render(const CriterionResult& r) {
    std::ostringstream out;
    out << (r.pass ? "PASS" : "FAIL") << " " << r.name;
    if (!r.detail.empty()) out << ": " << r.detail;
    return out.str();
}

}  // namespace hahn::selftest
