#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hahn/algebra.hpp"

namespace hahn {

/// v(f) for the canonical valuation: min(supp(f)), infinite iff f == 0.
class Valuation {
public:
    static Valuation infinite() { return Valuation(std::nullopt); }
    static Valuation finite(GroupElement g) { return Valuation(std::move(g)); }

    bool is_infinite() const { return !value_.has_value(); }
    const GroupElement& value() const;

    friend bool operator==(const Valuation& a, const Valuation& b);
    /// Order with infinity as the greatest element.
    friend bool operator<(const Valuation& a, const Valuation& b);
    friend bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }

    Valuation operator+(const Valuation& other) const;

    std::string str() const;

private:
    explicit Valuation(std::optional<GroupElement> v) : value_(std::move(v)) {}
    std::optional<GroupElement> value_;
};

struct Term {
    GroupElement exp;
    Coefficient coeff;
};

/// Membership flags for the canonical substructures of the series field:
/// the valuation ring, its maximal ideal, the additive complement of
/// purely infinite elements, the monomial group, and the coefficient field.
struct SeriesPredicates {
    bool in_O = false;
    bool in_little_o = false;
    bool in_V = false;
    bool is_monomial = false;
    bool in_k = false;
};

struct Decomposition;

/// A finitely supported generalized power series: terms strictly
/// increasing in exponent, all coefficients nonzero. The empty term list
/// is the zero series. Values are immutable once built.
class Series {
public:
    Series() = default;

    /// Normalizes: sorts, merges duplicate exponents, drops zeros.
    static Series from_terms(std::vector<Term> terms);
    static Series monomial(GroupElement exp, Coefficient coeff);
    static Series constant(Coefficient c, GroupKind group);

    /// Series grammar: `term (('+'|'-') term)*` with
    /// term := coeff '*' 't' '^' exp | 't' ['^' exp] | coeff,
    /// exponents parenthesized (`t^(-2)`, `t^(1/2)`, `t^(1,5)`) or a bare
    /// integer (`t^3`).
    static Series parse(std::string_view text, const AlgebraContext& ctx);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Valuation valuation() const;
    bool has_exponent(const GroupElement& g) const;
    /// Coefficient at exponent g; nullopt when g is outside the support.
    std::optional<Coefficient> coeff_at(const GroupElement& g) const;
    SeriesPredicates predicates() const;

    friend Series operator+(const Series& f, const Series& g);
    friend Series operator-(const Series& f, const Series& g);
    friend Series operator*(const Series& f, const Series& g);
    Series operator-() const;
    Series pow(std::uint64_t n) const;

    /// Keeps exactly the terms with exponent strictly below delta.
    Series truncate(const GroupElement& delta) const;
    /// Truncation at a monomial m: the terms below v(m). Throws UsageError
    /// unless m is a monomial.
    Series truncate_at_monomial(const Series& m) const;
    Decomposition decompose() const;

    bool operator==(const Series& other) const;

    std::string str() const;
    nlohmann::json to_json() const;
    static Series from_json(const nlohmann::json& j, const AlgebraContext& ctx);

private:
    std::vector<Term> terms_;
};

/// f = purely_infinite + constant + infinitesimal, with supports in
/// Γ^{<0}, {0}, Γ^{>0} respectively.
struct Decomposition {
    Series purely_infinite;
    Coefficient constant;
    Series infinitesimal;
};

/// How f sits against g in the divisibility-by-bounded-elements order:
/// Prec is f strictly below g, Succ strictly above, Asymp the same
/// magnitude. IncomparableZero is never produced by the valuation
/// semantics (zero pairs classify as Asymp); it is kept so the
/// classification domain is explicit.
enum class AsymptoticClass { Prec, Asymp, Succ, IncomparableZero };

/// f ≼ g: f == 0, or g != 0 and v(f) >= v(g).
bool dominated_by(const Series& f, const Series& g);
AsymptoticClass asymptotic_compare(const Series& f, const Series& g);
std::string to_string(AsymptoticClass c);

/// A finite multiplicative inverse up to the given precision: returns g
/// with v(f*g - 1) >= bound, built from the leading term and a finite
/// geometric expansion, then cut above the bound. When v(f) >= 0 the
/// result additionally has supp(g) < bound. Throws DivisionByZeroError
/// for f == 0 and Error when no finite expansion can reach the bound.
Series invert_truncated(const Series& f, const GroupElement& bound);

}  // namespace hahn
