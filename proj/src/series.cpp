#include "hahn/series.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include <nlohmann/json.hpp>

namespace hahn {

const GroupElement& Valuation::value() const {
    if (!value_) throw UsageError("valuation of the zero series has no finite value");
    return *value_;
}

bool operator==(const Valuation& a, const Valuation& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
    return *a.value_ == *b.value_;
}

bool operator<(const Valuation& a, const Valuation& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return a.value_->compare(*b.value_) == std::strong_ordering::less;
}

Valuation Valuation::operator+(const Valuation& other) const {
    if (is_infinite() || other.is_infinite()) return infinite();
    return finite(*value_ + *other.value_);
}

std::string Valuation::str() const { return value_ ? value_->str() : "inf"; }

Series Series::from_terms(std::vector<Term> terms) {
    std::erase_if(terms, [](const Term& t) { return t.coeff.is_zero(); });
    std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        return a.exp.compare(b.exp) == std::strong_ordering::less;
    });
    Series result;
    for (auto& t : terms) {
        if (!result.terms_.empty() && result.terms_.back().exp == t.exp) {
            Coefficient sum = result.terms_.back().coeff + t.coeff;
            if (sum.is_zero()) {
                result.terms_.pop_back();
            } else {
                result.terms_.back().coeff = std::move(sum);
            }
        } else {
            result.terms_.push_back(std::move(t));
        }
    }
    return result;
}

Series Series::monomial(GroupElement exp, Coefficient coeff) {
    std::vector<Term> ts;
    ts.push_back(Term{std::move(exp), std::move(coeff)});
    return from_terms(std::move(ts));
}

Series Series::constant(Coefficient c, GroupKind group) {
    if (c.is_zero()) return Series();
    return monomial(GroupElement::zero(group), std::move(c));
}

Valuation Series::valuation() const {
    if (terms_.empty()) return Valuation::infinite();
    return Valuation::finite(terms_.front().exp);
}

bool Series::has_exponent(const GroupElement& g) const {
    return coeff_at(g).has_value();
}

std::optional<Coefficient> Series::coeff_at(const GroupElement& g) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), g, [](const Term& t, const GroupElement& e) {
        return t.exp.compare(e) == std::strong_ordering::less;
    });
    if (it != terms_.end() && it->exp == g) return it->coeff;
    return std::nullopt;
}

SeriesPredicates Series::predicates() const {
    SeriesPredicates p;
    // The zero series has empty support, so every support condition holds
    // vacuously; it is not a monomial.
    p.in_O = terms_.empty() || terms_.front().exp.sign() >= 0;
    p.in_little_o = terms_.empty() || terms_.front().exp.sign() > 0;
    p.in_V = terms_.empty() || terms_.back().exp.sign() < 0;
    p.is_monomial = terms_.size() == 1 && terms_.front().coeff.is_one();
    p.in_k = terms_.empty() ||
             (terms_.size() == 1 && terms_.front().exp.sign() == 0);
    return p;
}

Series operator+(const Series& f, const Series& g) {
    std::vector<Term> merged;
    merged.reserve(f.terms_.size() + g.terms_.size());
    merged.insert(merged.end(), f.terms_.begin(), f.terms_.end());
    merged.insert(merged.end(), g.terms_.begin(), g.terms_.end());
    return Series::from_terms(std::move(merged));
}

Series Series::operator-() const {
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back(Term{t.exp, -t.coeff});
    Series r;
    r.terms_ = std::move(ts);  // negation preserves normal form
    return r;
}

Series operator-(const Series& f, const Series& g) { return f + (-g); }

Series operator*(const Series& f, const Series& g) {
    if (f.is_zero() || g.is_zero()) return Series();
    struct ExpLess {
        bool operator()(const GroupElement& a, const GroupElement& b) const {
            return a.compare(b) == std::strong_ordering::less;
        }
    };
    std::map<GroupElement, Coefficient, ExpLess> acc;
    for (const auto& a : f.terms_) {
        for (const auto& b : g.terms_) {
            GroupElement e = a.exp + b.exp;
            Coefficient c = a.coeff * b.coeff;
            auto it = acc.find(e);
            if (it == acc.end()) {
                acc.emplace(std::move(e), std::move(c));
            } else {
                it->second = it->second + c;
            }
        }
    }
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (auto& [e, c] : acc) {
        if (!c.is_zero()) ts.push_back(Term{e, c});
    }
    Series r;
    r.terms_ = std::move(ts);  // map iteration is already exponent-sorted
    return r;
}

Series Series::pow(std::uint64_t n) const {
    if (n == 0) {
        if (terms_.empty()) throw UsageError("0^0 for series is undefined here");
        GroupKind gk = terms_.front().exp.kind();
        FieldKind fk = terms_.front().coeff.kind();
        BigInt mod = fk == FieldKind::Fp ? terms_.front().coeff.modulus() : BigInt(0);
        return monomial(GroupElement::zero(gk), Coefficient::one(fk, mod));
    }
    Series result = *this;
    Series base = *this;
    n -= 1;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

Series Series::truncate(const GroupElement& delta) const {
    std::vector<Term> ts;
    for (const auto& t : terms_) {
        if (t.exp.compare(delta) == std::strong_ordering::less) {
            ts.push_back(t);
        } else {
            break;
        }
    }
    Series r;
    r.terms_ = std::move(ts);
    return r;
}

Series Series::truncate_at_monomial(const Series& m) const {
    if (!m.predicates().is_monomial)
        throw UsageError("truncation base must be a monomial");
    return truncate(m.terms_.front().exp);
}

Decomposition Series::decompose() const {
    Decomposition d;
    std::vector<Term> low, high;
    FieldKind fk = terms_.empty() ? FieldKind::Rat : terms_.front().coeff.kind();
    BigInt mod = (!terms_.empty() && fk == FieldKind::Fp) ? terms_.front().coeff.modulus() : BigInt(0);
    d.constant = Coefficient::zero(fk, fk == FieldKind::Fp ? mod : BigInt(0));
    for (const auto& t : terms_) {
        int s = t.exp.sign();
        if (s < 0) {
            low.push_back(t);
        } else if (s == 0) {
            d.constant = t.coeff;
        } else {
            high.push_back(t);
        }
    }
    d.purely_infinite.terms_ = std::move(low);
    d.infinitesimal.terms_ = std::move(high);
    return d;
}

bool Series::operator==(const Series& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (!(terms_[i].exp == other.terms_[i].exp)) return false;
        if (!(terms_[i].coeff == other.terms_[i].coeff)) return false;
    }
    return true;
}

bool dominated_by(const Series& f, const Series& g) {
    if (f.is_zero()) return true;
    if (g.is_zero()) return false;
    return f.valuation() >= g.valuation();
}

AsymptoticClass asymptotic_compare(const Series& f, const Series& g) {
    bool fg = dominated_by(f, g);
    bool gf = dominated_by(g, f);
    if (fg && gf) return AsymptoticClass::Asymp;
    if (fg) return AsymptoticClass::Prec;
    if (gf) return AsymptoticClass::Succ;
    return AsymptoticClass::IncomparableZero;
}

std::string to_string(AsymptoticClass c) {
    switch (c) {
        case AsymptoticClass::Prec: return "prec";
        case AsymptoticClass::Asymp: return "asymp";
        case AsymptoticClass::Succ: return "succ";
        case AsymptoticClass::IncomparableZero: return "incomparable_zero";
    }
    return "?";
}

namespace {

// Smallest q >= 1 with q*step >= target (step > 0 in the group order), or
// nullopt when no multiple reaches the target (possible for Lex2 steps
// that are infinitesimal relative to the target).
std::optional<BigInt> min_multiple_reaching(const GroupElement& step, const GroupElement& target) {
    if (step.sign() <= 0) throw UsageError("step must be positive");
    if (target.sign() <= 0) return BigInt(1);
    switch (step.kind()) {
        case GroupKind::Int: {
            BigInt q = ceil_div(target.as_int(), step.as_int());
            return q < 1 ? BigInt(1) : q;
        }
        case GroupKind::Rat: {
            const BigRat& s = step.as_rat();
            const BigRat& t = target.as_rat();
            BigInt q = ceil_div(numerator(t) * denominator(s), numerator(s) * denominator(t));
            return q < 1 ? BigInt(1) : q;
        }
        case GroupKind::Lex2: {
            const auto& s = step.as_lex2();
            const auto& t = target.as_lex2();
            if (s.first == 0) {
                // Multiples stay at first coordinate 0.
                if (t.first > 0) return std::nullopt;
                if (t.first < 0) return BigInt(1);
                BigInt q = ceil_div(t.second, s.second);
                return q < 1 ? BigInt(1) : q;
            }
            BigInt q = ceil_div(t.first, s.first);
            if (q < 1) q = 1;
            GroupElement reached = step.scaled(q);
            if (reached.compare(target) == std::strong_ordering::less) ++q;
            return q;
        }
    }
    throw UsageError("bad group kind");
}

constexpr std::uint64_t kMaxExpansionLength = 4096;

}  // namespace

Series invert_truncated(const Series& f, const GroupElement& bound) {
    if (f.is_zero()) throw DivisionByZeroError("cannot invert the zero series");
    const Term& lead = f.terms().front();
    BigInt mod = lead.coeff.kind() == FieldKind::Fp ? lead.coeff.modulus() : BigInt(0);
    Series one = Series::monomial(GroupElement::zero(lead.exp.kind()),
                                  Coefficient::one(lead.coeff.kind(), mod));
    // f = c*t^gamma*(1 + eps) with v(eps) > 0.
    Series unit = Series::monomial(-lead.exp, lead.coeff.inverse());
    Series eps = (unit * f) - one;
    GroupElement cut = bound - lead.exp;
    if (eps.is_zero()) return unit.truncate(cut);

    auto steps = min_multiple_reaching(eps.valuation().value(), bound);
    if (!steps)
        throw Error("no finite expansion reaches the requested bound in this value group");
    if (*steps > kMaxExpansionLength)
        throw Error("expansion to the requested bound needs " + steps->str() +
                    " terms; limit is " + std::to_string(kMaxExpansionLength));
    std::uint64_t k_max = steps->convert_to<std::uint64_t>();  // need (K+1)*v(eps) >= bound

    Series sum = one;
    Series power = one;
    Series neg_eps = -eps;
    // Intermediate powers are cut where the factored-out leading monomial
    // will land them on the final cut; dropped terms only ever produce
    // output at or above it.
    for (std::uint64_t k = 1; k < k_max; ++k) {
        power = (power * neg_eps).truncate(bound);
        if (power.is_zero()) break;
        sum = sum + power;
    }
    return (unit * sum).truncate(cut);
}

// ---------------------------------------------------------------------------
// Text form

namespace {

struct SeriesParser {
    std::string_view text;
    std::size_t pos = 0;
    const AlgebraContext& ctx;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(std::string("expected ") + what, pos);
    }

    // A numeric literal: digits, optionally followed by /digits.
    std::string_view number(bool allow_fraction) {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        std::size_t digits = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            ++pos;
            ++digits;
        }
        if (digits == 0) throw ParseError("expected a number", start);
        if (allow_fraction && pos < text.size() && text[pos] == '/') {
            ++pos;
            std::size_t den = 0;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
                ++pos;
                ++den;
            }
            if (den == 0) throw ParseError("expected denominator digits", pos);
        }
        return text.substr(start, pos - start);
    }

    GroupElement exponent() {
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
            std::size_t start = pos;
            int depth = 0;
            std::size_t i = pos;
            for (; i < text.size(); ++i) {
                if (text[i] == '(') ++depth;
                if (text[i] == ')') {
                    --depth;
                    if (depth == 0) break;
                }
            }
            if (depth != 0) throw ParseError("unbalanced parentheses in exponent", start);
            std::string_view inner = text.substr(start + 1, i - start - 1);
            pos = i + 1;
            try {
                return ctx.parse_exponent(inner);
            } catch (const ParseError& e) {
                throw ParseError(std::string("bad exponent: ") + e.what(), start + 1);
            }
        }
        std::string_view lit = number(ctx.group == GroupKind::Rat);
        std::size_t start = pos - lit.size();
        try {
            return ctx.parse_exponent(lit);
        } catch (const ParseError& e) {
            throw ParseError(std::string("bad exponent: ") + e.what(), start);
        }
    }

    GroupElement exponent_one() {
        switch (ctx.group) {
            case GroupKind::Int: return GroupElement::from_int(1);
            case GroupKind::Rat: return GroupElement::from_rat(BigRat(1));
            case GroupKind::Lex2:
                throw ParseError("bare t needs an explicit exponent for the lex2 group", pos);
        }
        throw ParseError("bad group kind", pos);
    }

    // term := coeff '*' 't' '^' exp | 't' ['^' exp] | coeff
    Term term(bool negate) {
        skip_ws();
        std::size_t start = pos;
        Coefficient coeff = ctx.coeff_one();
        GroupElement exp = ctx.exp_zero();
        bool have_t = false;
        if (peek() == 't') {
            ++pos;
            have_t = true;
        } else {
            std::string_view lit = number(ctx.field == FieldKind::Rat);
            try {
                coeff = ctx.parse_coefficient(lit);
            } catch (const ParseError& e) {
                throw ParseError(std::string("bad coefficient: ") + e.what(), start);
            }
            if (accept('*')) {
                expect('t', "t after *");
                have_t = true;
            }
        }
        if (have_t) {
            if (accept('^')) {
                exp = exponent();
            } else {
                exp = exponent_one();
            }
        }
        if (negate) coeff = -coeff;
        return Term{std::move(exp), std::move(coeff)};
    }
};

bool coeff_prints_negative(const Coefficient& c) {
    return c.kind() == FieldKind::Rat && c.as_rat() < 0;
}

std::string positive_part(const Coefficient& c) {
    if (c.kind() == FieldKind::Rat && c.as_rat() < 0) return (-c).str();
    return c.str();
}

std::string term_body(const Term& t) {
    if (t.exp.sign() == 0) return positive_part(t.coeff);
    std::string expstr = t.exp.str();
    std::string tpart;
    bool exp_is_one = false;
    if (t.exp.kind() == GroupKind::Int) exp_is_one = t.exp.as_int() == 1;
    if (t.exp.kind() == GroupKind::Rat) exp_is_one = t.exp.as_rat() == 1;
    if (exp_is_one) {
        tpart = "t";
    } else if (!expstr.empty() && expstr.front() == '(') {
        tpart = "t^" + expstr;
    } else {
        tpart = "t^(" + expstr + ")";
    }
    Coefficient abs = coeff_prints_negative(t.coeff) ? -t.coeff : t.coeff;
    if (abs.is_one()) return tpart;
    return positive_part(t.coeff) + "*" + tpart;
}

}  // namespace

Series Series::parse(std::string_view text, const AlgebraContext& ctx) {
    SeriesParser p{text, 0, ctx};
    std::vector<Term> terms;
    bool negate = p.accept('-');
    terms.push_back(p.term(negate));
    while (!p.at_end()) {
        if (p.accept('+')) {
            terms.push_back(p.term(false));
        } else if (p.accept('-')) {
            terms.push_back(p.term(true));
        } else {
            throw ParseError("expected + or - between terms", p.pos);
        }
    }
    return from_terms(std::move(terms));
}

std::string Series::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        bool neg = coeff_prints_negative(terms_[i].coeff);
        if (i == 0) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        out += term_body(terms_[i]);
    }
    return out;
}

nlohmann::json Series::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : terms_) {
        arr.push_back({{"exp", t.exp.str()}, {"coeff", t.coeff.str()}});
    }
    return nlohmann::json{{"terms", arr}};
}

Series Series::from_json(const nlohmann::json& j, const AlgebraContext& ctx) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw UsageError("series JSON must be an object with a terms array");
    std::vector<Term> ts;
    for (const auto& item : j["terms"]) {
        if (!item.contains("exp") || !item.contains("coeff"))
            throw UsageError("series JSON term needs exp and coeff");
        ts.push_back(Term{ctx.parse_exponent(item["exp"].get<std::string>()),
                          ctx.parse_coefficient(item["coeff"].get<std::string>())});
    }
    // The schema requires strictly increasing exponents and nonzero
    // coefficients; reject rather than silently renormalize.
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i].coeff.is_zero()) throw UsageError("series JSON has a zero coefficient");
        if (i > 0 && ts[i - 1].exp.compare(ts[i].exp) != std::strong_ordering::less)
            throw UsageError("series JSON exponents must be strictly increasing");
    }
    return from_terms(std::move(ts));
}

}  // namespace hahn
