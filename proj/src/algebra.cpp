#include "hahn/algebra.hpp"

#include <utility>

namespace hahn {

namespace {

std::strong_ordering cmp(const BigInt& a, const BigInt& b) {
    if (a < b) return std::strong_ordering::less;
    if (b < a) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::strong_ordering cmp(const BigRat& a, const BigRat& b) {
    if (a < b) return std::strong_ordering::less;
    if (b < a) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

int sign_of(const BigInt& v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }
int sign_of(const BigRat& v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }

// Extended Euclid: returns x with a*x ≡ 1 (mod m), for gcd(a, m) == 1.
BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt old_r = a % m;
    if (old_r < 0) old_r += m;
    BigInt r = m;
    BigInt old_s = 1, s = 0;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1)
        throw DivisionByZeroError("residue has no inverse modulo " + m.str());
    old_s %= m;
    if (old_s < 0) old_s += m;
    return old_s;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string to_string(GroupKind kind) {
    switch (kind) {
        case GroupKind::Int: return "int";
        case GroupKind::Rat: return "rat";
        case GroupKind::Lex2: return "lex2";
    }
    return "?";
}

std::string to_string(FieldKind kind) {
    return kind == FieldKind::Rat ? "rat" : "fp";
}

GroupKind group_kind_from_string(std::string_view name) {
    if (name == "int") return GroupKind::Int;
    if (name == "rat") return GroupKind::Rat;
    if (name == "lex2") return GroupKind::Lex2;
    throw UsageError("unknown group kind: " + std::string(name));
}

FieldKind field_kind_from_string(std::string_view name) {
    if (name == "rat") return FieldKind::Rat;
    if (name == "fp") return FieldKind::Fp;
    throw UsageError("unknown field kind: " + std::string(name));
}

GroupElement GroupElement::zero(GroupKind kind) {
    switch (kind) {
        case GroupKind::Int: return from_int(0);
        case GroupKind::Rat: return from_rat(BigRat(0));
        case GroupKind::Lex2: return from_lex2(0, 0);
    }
    throw UsageError("bad group kind");
}

GroupElement GroupElement::parse(GroupKind kind, std::string_view text) {
    std::string_view body = trim(text);
    switch (kind) {
        case GroupKind::Int:
            return from_int(parse_bigint(body));
        case GroupKind::Rat: {
            auto slash = body.find('/');
            if (slash == std::string_view::npos) return from_rat(BigRat(parse_bigint(body)));
            BigInt num = parse_bigint(trim(body.substr(0, slash)));
            BigInt den = parse_bigint(trim(body.substr(slash + 1)), slash + 1);
            if (den == 0) throw ParseError("zero denominator", slash + 1);
            return from_rat(make_rat(num, den));
        }
        case GroupKind::Lex2: {
            std::string_view inner = body;
            if (!inner.empty() && inner.front() == '(') {
                if (inner.back() != ')') throw ParseError("unbalanced parentheses in pair", body.size());
                inner = trim(inner.substr(1, inner.size() - 2));
            }
            auto comma = inner.find(',');
            if (comma == std::string_view::npos)
                throw ParseError("lex pair needs the form (a,b)", 0);
            BigInt first = parse_bigint(trim(inner.substr(0, comma)));
            BigInt second = parse_bigint(trim(inner.substr(comma + 1)), comma + 1);
            return from_lex2(std::move(first), std::move(second));
        }
    }
    throw UsageError("bad group kind");
}

GroupKind GroupElement::kind() const {
    if (std::holds_alternative<BigInt>(value_)) return GroupKind::Int;
    if (std::holds_alternative<BigRat>(value_)) return GroupKind::Rat;
    return GroupKind::Lex2;
}

bool GroupElement::is_zero() const { return sign() == 0; }

int GroupElement::sign() const {
    return std::visit(
        [](const auto& v) -> int {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LexPair>) {
                int s = sign_of(v.first);
                return s != 0 ? s : sign_of(v.second);
            } else {
                return sign_of(v);
            }
        },
        value_);
}

const BigInt& GroupElement::as_int() const {
    if (auto* p = std::get_if<BigInt>(&value_)) return *p;
    throw UsageError("group element is not an integer");
}

const BigRat& GroupElement::as_rat() const {
    if (auto* p = std::get_if<BigRat>(&value_)) return *p;
    throw UsageError("group element is not a rational");
}

const GroupElement::LexPair& GroupElement::as_lex2() const {
    if (auto* p = std::get_if<LexPair>(&value_)) return *p;
    throw UsageError("group element is not a lex pair");
}

GroupElement GroupElement::operator-() const {
    return std::visit(
        [](const auto& v) -> GroupElement {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LexPair>) {
                return from_lex2(-v.first, -v.second);
            } else if constexpr (std::is_same_v<T, BigRat>) {
                return from_rat(-v);
            } else {
                return from_int(-v);
            }
        },
        value_);
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
    if (a.value_.index() != b.value_.index())
        throw UsageError("mixed group kinds in addition");
    return std::visit(
        [&b](const auto& va) -> GroupElement {
            using T = std::decay_t<decltype(va)>;
            const auto& vb = std::get<T>(b.value_);
            if constexpr (std::is_same_v<T, GroupElement::LexPair>) {
                return GroupElement::from_lex2(va.first + vb.first, va.second + vb.second);
            } else if constexpr (std::is_same_v<T, BigRat>) {
                return GroupElement::from_rat(va + vb);
            } else {
                return GroupElement::from_int(va + vb);
            }
        },
        a.value_);
}

GroupElement operator-(const GroupElement& a, const GroupElement& b) { return a + (-b); }

GroupElement GroupElement::scaled(const BigInt& k) const {
    return std::visit(
        [&k](const auto& v) -> GroupElement {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LexPair>) {
                return from_lex2(v.first * k, v.second * k);
            } else if constexpr (std::is_same_v<T, BigRat>) {
                return from_rat(v * BigRat(k));
            } else {
                return from_int(v * k);
            }
        },
        value_);
}

std::strong_ordering GroupElement::compare(const GroupElement& other) const {
    if (value_.index() != other.value_.index())
        throw UsageError("mixed group kinds in comparison");
    return std::visit(
        [&other](const auto& va) -> std::strong_ordering {
            using T = std::decay_t<decltype(va)>;
            const auto& vb = std::get<T>(other.value_);
            if constexpr (std::is_same_v<T, GroupElement::LexPair>) {
                auto c = cmp(va.first, vb.first);
                return c != std::strong_ordering::equal ? c : cmp(va.second, vb.second);
            } else {
                return cmp(va, vb);
            }
        },
        value_);
}

std::string GroupElement::str() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GroupElement::LexPair>) {
                return "(" + v.first.str() + "," + v.second.str() + ")";
            } else if constexpr (std::is_same_v<T, BigRat>) {
                if (denominator(v) == 1) return numerator(v).str();
                return numerator(v).str() + "/" + denominator(v).str();
            } else {
                return v.str();
            }
        },
        value_);
}

Coefficient Coefficient::fp(BigInt value, BigInt modulus) {
    if (modulus < 2) throw UsageError("Fp modulus must be >= 2");
    value %= modulus;
    if (value < 0) value += modulus;
    return Coefficient(FpValue{std::move(value), std::move(modulus)});
}

Coefficient Coefficient::zero(FieldKind kind, const BigInt& modulus) {
    return kind == FieldKind::Rat ? from_rat(BigRat(0)) : fp(0, modulus);
}

Coefficient Coefficient::one(FieldKind kind, const BigInt& modulus) {
    return kind == FieldKind::Rat ? from_rat(BigRat(1)) : fp(1, modulus);
}

Coefficient Coefficient::parse(FieldKind kind, const BigInt& modulus, std::string_view text) {
    std::string_view body = trim(text);
    if (kind == FieldKind::Fp) return fp(parse_bigint(body), modulus);
    auto slash = body.find('/');
    if (slash == std::string_view::npos) return from_rat(BigRat(parse_bigint(body)));
    BigInt num = parse_bigint(trim(body.substr(0, slash)));
    BigInt den = parse_bigint(trim(body.substr(slash + 1)), slash + 1);
    if (den == 0) throw ParseError("zero denominator", slash + 1);
    return from_rat(make_rat(num, den));
}

FieldKind Coefficient::kind() const {
    return std::holds_alternative<BigRat>(value_) ? FieldKind::Rat : FieldKind::Fp;
}

bool Coefficient::is_zero() const {
    if (auto* p = std::get_if<BigRat>(&value_)) return *p == 0;
    return std::get<FpValue>(value_).value == 0;
}

bool Coefficient::is_one() const {
    if (auto* p = std::get_if<BigRat>(&value_)) return *p == 1;
    return std::get<FpValue>(value_).value == 1;
}

const BigRat& Coefficient::as_rat() const {
    if (auto* p = std::get_if<BigRat>(&value_)) return *p;
    throw UsageError("coefficient is not rational");
}

const BigInt& Coefficient::residue() const {
    if (auto* p = std::get_if<FpValue>(&value_)) return p->value;
    throw UsageError("coefficient is not a prime-field residue");
}

const BigInt& Coefficient::modulus() const {
    if (auto* p = std::get_if<FpValue>(&value_)) return p->modulus;
    throw UsageError("coefficient is not a prime-field residue");
}

void Coefficient::require_same_field(const Coefficient& other) const {
    if (value_.index() != other.value_.index())
        throw UsageError("mixed coefficient fields");
    if (auto* p = std::get_if<FpValue>(&value_)) {
        if (p->modulus != std::get<FpValue>(other.value_).modulus)
            throw UsageError("mixed Fp moduli");
    }
}

Coefficient Coefficient::operator-() const {
    if (auto* p = std::get_if<BigRat>(&value_)) return from_rat(-*p);
    const auto& v = std::get<FpValue>(value_);
    return fp(-v.value, v.modulus);
}

Coefficient operator+(const Coefficient& a, const Coefficient& b) {
    a.require_same_field(b);
    if (auto* p = std::get_if<BigRat>(&a.value_))
        return Coefficient::from_rat(*p + std::get<BigRat>(b.value_));
    const auto& va = std::get<Coefficient::FpValue>(a.value_);
    const auto& vb = std::get<Coefficient::FpValue>(b.value_);
    return Coefficient::fp(va.value + vb.value, va.modulus);
}

Coefficient operator-(const Coefficient& a, const Coefficient& b) { return a + (-b); }

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    a.require_same_field(b);
    if (auto* p = std::get_if<BigRat>(&a.value_))
        return Coefficient::from_rat(*p * std::get<BigRat>(b.value_));
    const auto& va = std::get<Coefficient::FpValue>(a.value_);
    const auto& vb = std::get<Coefficient::FpValue>(b.value_);
    return Coefficient::fp(va.value * vb.value, va.modulus);
}

Coefficient Coefficient::inverse() const {
    if (is_zero()) throw DivisionByZeroError("inverse of zero coefficient");
    if (auto* p = std::get_if<BigRat>(&value_)) return from_rat(BigRat(1) / *p);
    const auto& v = std::get<FpValue>(value_);
    return fp(mod_inverse(v.value, v.modulus), v.modulus);
}

bool Coefficient::operator==(const Coefficient& other) const {
    require_same_field(other);
    return value_ == other.value_;
}

std::string Coefficient::str() const {
    if (auto* p = std::get_if<BigRat>(&value_)) {
        if (denominator(*p) == 1) return numerator(*p).str();
        return numerator(*p).str() + "/" + denominator(*p).str();
    }
    return std::get<FpValue>(value_).value.str();
}

}  // namespace hahn
