#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hahn/report.hpp"
#include "hahn/series.hpp"

namespace hahn::interp {

/// Parameters for the finite interpretation of arithmetic inside the
/// series field: a base monomial strictly below 1 (positive valuation)
/// whose powers 𝔫^0..𝔫^{N-1} play the naturals, and the length N.
struct InterpretationConfig {
    Series base;
    std::size_t depth;

    InterpretationConfig(Series base_monomial, std::size_t depth_);
};

/// The truncation-definable relation "a is a monomial whose valuation
/// lies in the support of b", computed from the definition: a in the
/// monomial group and b - b|_a of the same magnitude as a.
bool support_rel(const Series& a, const Series& b);
/// Independent route for the same relation: direct support membership.
bool support_rel_direct(const Series& a, const Series& b);

/// Equal supports (the definable equivalence the subset encoding quotients by).
bool supp_equiv(const Series& f, const Series& g);

/// The n-th power of the base monomial; n must be below the depth.
Series iota(std::size_t n, const InterpretationConfig& cfg);

/// Canonical representative (all coefficients 1) of the class encoding
/// the subset J of {0,...,N-1}.
Series encode_subset(const std::vector<std::size_t>& indices, const InterpretationConfig& cfg);

/// Membership relation between an encoded natural and an encoded subset
/// class; invariant under replacing g by any g' with equal support.
bool class_member(const Series& m, const Series& g);

/// Verifies the encoded copy of arithmetic: iota turns addition into
/// multiplication, is injective, and transfers membership on random
/// subsets. Failures land in the report with counterexamples.
Report check_interpretation(const InterpretationConfig& cfg, std::size_t trials,
                            std::uint64_t seed);

/// The two-sorted truncation map T(f, gamma) = f truncated at gamma.
Series truncation_map(const Series& f, const GroupElement& gamma);

/// The two-sorted support relation: v(f - T(f, gamma)) == gamma.
bool exponent_rel(const GroupElement& gamma, const Series& f);
bool exponent_rel_direct(const GroupElement& gamma, const Series& f);

struct CoeffFieldResult {
    bool verdict = false;
    std::optional<Series> witness;  // probe p with f*p outside the complement
};

/// Tests whether f (a bounded series) multiplies the purely infinite
/// complement into itself, which holds exactly when f is a constant. For
/// constants the given probes are each verified; otherwise a violating
/// probe is constructed from the largest positive exponent of f and
/// returned as the witness.
CoeffFieldResult coeff_field_test(const Series& f, const std::vector<Series>& probes);

}  // namespace hahn::interp
