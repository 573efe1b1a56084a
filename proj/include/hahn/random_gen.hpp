#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hahn/series.hpp"

namespace hahn::gen {

/// Deterministic source for the randomized suites; everything downstream
/// of a fixed seed is reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
    }
    std::uint64_t index(std::uint64_t count) {
        return std::uniform_int_distribution<std::uint64_t>(0, count - 1)(engine_);
    }
    bool flip() { return range(0, 1) == 1; }

private:
    std::mt19937_64 engine_;
};

inline GroupElement random_exponent(Rng& rng, GroupKind kind) {
    switch (kind) {
        case GroupKind::Int:
            return GroupElement::from_int(rng.range(-8, 8));
        case GroupKind::Rat:
            return GroupElement::from_rat(make_rat(rng.range(-8, 8), rng.range(1, 4)));
        case GroupKind::Lex2:
            return GroupElement::from_lex2(rng.range(-4, 4), rng.range(-4, 4));
    }
    throw UsageError("bad group kind");
}

inline GroupElement random_positive(Rng& rng, GroupKind kind) {
    switch (kind) {
        case GroupKind::Int:
            return GroupElement::from_int(rng.range(1, 8));
        case GroupKind::Rat:
            return GroupElement::from_rat(make_rat(rng.range(1, 8), rng.range(1, 4)));
        case GroupKind::Lex2: {
            if (rng.flip()) return GroupElement::from_lex2(rng.range(1, 4), rng.range(-4, 4));
            return GroupElement::from_lex2(0, rng.range(1, 4));
        }
    }
    throw UsageError("bad group kind");
}

inline Coefficient random_coefficient(Rng& rng, FieldKind kind, const BigInt& modulus,
                                      bool nonzero) {
    for (;;) {
        Coefficient c = kind == FieldKind::Rat
                            ? Coefficient::from_rat(make_rat(rng.range(-9, 9), rng.range(1, 6)))
                            : Coefficient::fp(rng.range(0, 1000), modulus);
        if (!nonzero || !c.is_zero()) return c;
    }
}

/// A random canonical series with at most max_terms terms. exp_sign
/// restricts the support: -1 keeps it negative, +1 nonnegative, 0 any.
inline Series random_series(Rng& rng, const AlgebraContext& ctx, std::size_t max_terms,
                            int exp_sign = 0) {
    std::size_t n = static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(max_terms)));
    std::vector<Term> terms;
    for (std::size_t i = 0; i < n; ++i) {
        GroupElement e = random_exponent(rng, ctx.group);
        if (exp_sign < 0 && e.sign() >= 0) {
            e = e.sign() == 0 ? e - random_positive(rng, ctx.group) : -e;
        }
        if (exp_sign > 0 && e.sign() < 0) e = -e;
        terms.push_back(Term{std::move(e), random_coefficient(rng, ctx.field, ctx.modulus, true)});
    }
    return Series::from_terms(std::move(terms));
}

inline Series random_monomial(Rng& rng, const AlgebraContext& ctx) {
    return Series::monomial(random_exponent(rng, ctx.group), ctx.coeff_one());
}

inline Series random_nonzero_series(Rng& rng, const AlgebraContext& ctx,
                                    std::size_t max_terms) {
    for (;;) {
        Series s = random_series(rng, ctx, max_terms);
        if (!s.is_zero()) return s;
    }
}

}  // namespace hahn::gen
