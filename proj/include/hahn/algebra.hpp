#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <variant>

#include "hahn/numeric.hpp"

namespace hahn {

/// Which ordered abelian group the exponents live in. Fixed once per
/// session; elements of different kinds never meet in one computation.
enum class GroupKind { Int, Rat, Lex2 };

/// Which coefficient field is in use.
enum class FieldKind { Rat, Fp };

std::string to_string(GroupKind kind);
std::string to_string(FieldKind kind);
GroupKind group_kind_from_string(std::string_view name);
FieldKind field_kind_from_string(std::string_view name);

/// An element of the configured value group: an arbitrary-precision
/// integer, an exact rational (lowest terms, positive denominator), or a
/// lexicographically ordered pair of integers.
class GroupElement {
public:
    struct LexPair {
        BigInt first;
        BigInt second;
        bool operator==(const LexPair&) const = default;
    };

    GroupElement() : value_(BigInt(0)) {}

    static GroupElement from_int(BigInt v) { return GroupElement(std::move(v)); }
    static GroupElement from_rat(BigRat v) { return GroupElement(std::move(v)); }
    static GroupElement from_lex2(BigInt first, BigInt second) {
        return GroupElement(LexPair{std::move(first), std::move(second)});
    }
    static GroupElement zero(GroupKind kind);

    /// Textual forms: integers `-?[0-9]+`, rationals `a/b`, lex pairs `(a,b)`.
    static GroupElement parse(GroupKind kind, std::string_view text);

    GroupKind kind() const;
    bool is_zero() const;
    /// -1, 0, +1 relative to the group zero.
    int sign() const;

    const BigInt& as_int() const;
    const BigRat& as_rat() const;
    const LexPair& as_lex2() const;

    GroupElement operator-() const;
    friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
    friend GroupElement operator-(const GroupElement& a, const GroupElement& b);

    /// this scaled by an integer factor (k-fold group sum).
    GroupElement scaled(const BigInt& k) const;

    /// Total order; throws UsageError on mixed kinds.
    std::strong_ordering compare(const GroupElement& other) const;
    friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
        return a.compare(b);
    }
    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.compare(b) == std::strong_ordering::equal;
    }

    std::string str() const;

private:
    explicit GroupElement(BigInt v) : value_(std::move(v)) {}
    explicit GroupElement(BigRat v) : value_(std::move(v)) {}
    explicit GroupElement(LexPair v) : value_(std::move(v)) {}

    std::variant<BigInt, BigRat, LexPair> value_;
};

/// An element of the configured coefficient field: an exact rational or a
/// residue in [0, p) with prime modulus p. The modulus is carried with
/// the value; mixing distinct moduli is a usage error.
class Coefficient {
public:
    Coefficient() : value_(BigRat(0)) {}

    static Coefficient from_rat(BigRat v) { return Coefficient(std::move(v)); }
    static Coefficient from_int(const BigInt& v) { return Coefficient(BigRat(v)); }
    static Coefficient fp(BigInt value, BigInt modulus);
    static Coefficient zero(FieldKind kind, const BigInt& modulus = 0);
    static Coefficient one(FieldKind kind, const BigInt& modulus = 0);
    static Coefficient parse(FieldKind kind, const BigInt& modulus, std::string_view text);

    FieldKind kind() const;
    bool is_zero() const;
    bool is_one() const;

    const BigRat& as_rat() const;
    /// Residue value for Fp coefficients.
    const BigInt& residue() const;
    const BigInt& modulus() const;

    Coefficient operator-() const;
    friend Coefficient operator+(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator-(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b);

    /// Multiplicative inverse; throws DivisionByZeroError on zero.
    Coefficient inverse() const;

    bool operator==(const Coefficient& other) const;

    std::string str() const;

private:
    struct FpValue {
        BigInt value;
        BigInt modulus;
        bool operator==(const FpValue&) const = default;
    };

    explicit Coefficient(BigRat v) : value_(std::move(v)) {}
    explicit Coefficient(FpValue v) : value_(std::move(v)) {}

    void require_same_field(const Coefficient& other) const;

    std::variant<BigRat, FpValue> value_;
};

/// Session-wide choice of value group and coefficient field. Every parser
/// and generator is relative to one of these.
struct AlgebraContext {
    GroupKind group = GroupKind::Rat;
    FieldKind field = FieldKind::Rat;
    BigInt modulus = 0;  // meaningful only when field == Fp

    GroupElement parse_exponent(std::string_view text) const {
        return GroupElement::parse(group, text);
    }
    Coefficient parse_coefficient(std::string_view text) const {
        return Coefficient::parse(field, modulus, text);
    }
    Coefficient coeff_zero() const { return Coefficient::zero(field, modulus); }
    Coefficient coeff_one() const { return Coefficient::one(field, modulus); }
    GroupElement exp_zero() const { return GroupElement::zero(group); }
};

}  // namespace hahn
