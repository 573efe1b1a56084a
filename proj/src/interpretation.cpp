#include "hahn/interpretation.hpp"

#include <algorithm>

#include "hahn/random_gen.hpp"

namespace hahn::interp {

InterpretationConfig::InterpretationConfig(Series base_monomial, std::size_t depth_)
    : base(std::move(base_monomial)), depth(depth_) {
    if (!base.predicates().is_monomial)
        throw UsageError("interpretation base must be a monomial");
    if (base.valuation().value().sign() <= 0)
        throw UsageError("interpretation base must lie strictly below 1 (positive valuation)");
    if (depth < 1) throw UsageError("interpretation depth must be >= 1");
}

bool support_rel(const Series& a, const Series& b) {
    if (!a.predicates().is_monomial) return false;
    Series tail = b - b.truncate_at_monomial(a);
    return asymptotic_compare(tail, a) == AsymptoticClass::Asymp;
}

bool support_rel_direct(const Series& a, const Series& b) {
    if (!a.predicates().is_monomial) return false;
    return b.has_exponent(a.valuation().value());
}

bool supp_equiv(const Series& f, const Series& g) {
    if (f.size() != g.size()) return false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(f.terms()[i].exp == g.terms()[i].exp)) return false;
    }
    return true;
}

Series iota(std::size_t n, const InterpretationConfig& cfg) {
    if (n >= cfg.depth)
        throw UsageError("iota argument " + std::to_string(n) + " is outside the depth " +
                         std::to_string(cfg.depth));
    return cfg.base.pow(n);
}

Series encode_subset(const std::vector<std::size_t>& indices, const InterpretationConfig& cfg) {
    Series sum;
    for (std::size_t j : indices) sum = sum + iota(j, cfg);
    return sum;
}

bool class_member(const Series& m, const Series& g) { return support_rel(m, g); }

Report check_interpretation(const InterpretationConfig& cfg, std::size_t trials,
                            std::uint64_t seed) {
    Report report;

    // iota turns addition into multiplication.
    bool hom = true;
    std::optional<std::string> hom_cex;
    for (std::size_t m = 0; m < cfg.depth && hom; ++m) {
        for (std::size_t n = 0; m + n < cfg.depth; ++n) {
            if (!(iota(m + n, cfg) == iota(m, cfg) * iota(n, cfg))) {
                hom = false;
                hom_cex = "m=" + std::to_string(m) + " n=" + std::to_string(n);
                break;
            }
        }
    }
    report.add("iota-additive-to-multiplicative", hom, hom_cex);

    // iota is injective below the depth.
    bool inj = true;
    std::optional<std::string> inj_cex;
    for (std::size_t m = 0; m < cfg.depth && inj; ++m) {
        for (std::size_t n = m + 1; n < cfg.depth; ++n) {
            if (iota(m, cfg) == iota(n, cfg)) {
                inj = false;
                inj_cex = "iota(" + std::to_string(m) + ") == iota(" + std::to_string(n) + ")";
                break;
            }
        }
    }
    report.add("iota-injective", inj, inj_cex);

    // Membership transfers through the encoding on random subsets.
    gen::Rng rng(seed);
    bool transfer = true;
    std::optional<std::string> transfer_cex;
    for (std::size_t trial = 0; trial < trials && transfer; ++trial) {
        std::vector<std::size_t> subset;
        for (std::size_t j = 0; j < cfg.depth; ++j) {
            if (rng.flip()) subset.push_back(j);
        }
        Series encoded = encode_subset(subset, cfg);
        std::size_t i = static_cast<std::size_t>(rng.index(cfg.depth));
        bool expected = std::binary_search(subset.begin(), subset.end(), i);
        if (class_member(iota(i, cfg), encoded) != expected) {
            transfer = false;
            transfer_cex = "trial " + std::to_string(trial) + ": i=" + std::to_string(i);
        }
    }
    report.add("membership-transfer", transfer, transfer_cex);
    return report;
}

Series truncation_map(const Series& f, const GroupElement& gamma) { return f.truncate(gamma); }

bool exponent_rel(const GroupElement& gamma, const Series& f) {
    return (f - truncation_map(f, gamma)).valuation() == Valuation::finite(gamma);
}

bool exponent_rel_direct(const GroupElement& gamma, const Series& f) {
    return f.has_exponent(gamma);
}

CoeffFieldResult coeff_field_test(const Series& f, const std::vector<Series>& probes) {
    SeriesPredicates p = f.predicates();
    if (!p.in_O) throw UsageError("coeff_field_test needs a bounded series");
    for (const auto& probe : probes) {
        if (!probe.predicates().in_V)
            throw UsageError("coeff_field_test probes must be purely infinite");
    }
    CoeffFieldResult result;
    if (p.in_k) {
        result.verdict = true;
        for (const auto& probe : probes) {
            if (!(f * probe).predicates().in_V)
                throw Error("constant failed to preserve the complement; this cannot happen");
        }
        return result;
    }
    // f is bounded but not constant, so it has a term at a positive
    // exponent; shifting its largest one down to 0 leaves the complement.
    const GroupElement& top = f.terms().back().exp;
    Series witness =
        Series::monomial(-top, Coefficient::one(f.terms().back().coeff.kind(),
                                                f.terms().back().coeff.kind() == FieldKind::Fp
                                                    ? f.terms().back().coeff.modulus()
                                                    : BigInt(0)));
    if ((f * witness).predicates().in_V)
        throw Error("constructed witness failed to violate the complement; this cannot happen");
    result.verdict = false;
    result.witness = std::move(witness);
    return result;
}

}  // namespace hahn::interp
