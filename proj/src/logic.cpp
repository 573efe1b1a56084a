#include "hahn/logic.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace hahn::mso {

Strategy strategy_from_string(std::string_view name) {
    if (name == "lfp") return Strategy::Lfp;
    if (name == "enum") return Strategy::Enum;
    throw UsageError("unknown strategy: " + std::string(name));
}

// ---------------------------------------------------------------------------
// Terms

Term Term::constant(Nat v) {
    Term t;
    t.parts.push_back(Part{true, v, {}});
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    t.parts.push_back(Part{false, 0, std::move(name)});
    return t;
}

Term Term::plus(const Term& other) const {
    Term t = *this;
    t.parts.insert(t.parts.end(), other.parts.begin(), other.parts.end());
    return t;
}

Term Term::plus_const(Nat v) const { return plus(constant(v)); }

bool Term::contains_var(const std::string& name) const {
    return std::any_of(parts.begin(), parts.end(),
                       [&](const Part& p) { return !p.is_const && p.var == name; });
}

std::string Term::str() const {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += "+";
        out += parts[i].is_const ? std::to_string(parts[i].value) : parts[i].var;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Formula construction

namespace {

FormulaPtr make_node(FormulaKind kind, std::size_t pos) {
    auto f = std::make_shared<Formula>();
    f->kind = kind;
    f->pos = pos;
    return f;
}

bool is_set_name(const std::string& name) {
    return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
}

}  // namespace

FormulaPtr Formula::member(Term t, std::string set_name, std::size_t pos) {
    if (!is_set_name(set_name))
        throw UsageError("membership needs a set variable on the right");
    auto f = std::const_pointer_cast<Formula>(make_node(FormulaKind::Member, pos));
    f->lhs = std::move(t);
    f->var = std::move(set_name);
    return f;
}

FormulaPtr Formula::eq(Term l, Term r, std::size_t pos) {
    auto f = std::const_pointer_cast<Formula>(make_node(FormulaKind::Eq, pos));
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
}

FormulaPtr Formula::less(Term l, Term r, std::size_t pos) {
    auto f = std::const_pointer_cast<Formula>(make_node(FormulaKind::Less, pos));
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
}

FormulaPtr Formula::negation(FormulaPtr child, std::size_t pos) {
    auto f = std::const_pointer_cast<Formula>(make_node(FormulaKind::Not, pos));
    f->a = std::move(child);
    return f;
}

namespace {
FormulaPtr binary(FormulaKind kind, FormulaPtr l, FormulaPtr r, std::size_t pos) {
    auto f = std::const_pointer_cast<Formula>(make_node(kind, pos));
    f->a = std::move(l);
    f->b = std::move(r);
    return f;
}
}  // namespace

FormulaPtr Formula::conj(FormulaPtr l, FormulaPtr r, std::size_t pos) {
    return binary(FormulaKind::And, std::move(l), std::move(r), pos);
}
FormulaPtr Formula::disj(FormulaPtr l, FormulaPtr r, std::size_t pos) {
    return binary(FormulaKind::Or, std::move(l), std::move(r), pos);
}
FormulaPtr Formula::implies(FormulaPtr l, FormulaPtr r, std::size_t pos) {
    return binary(FormulaKind::Implies, std::move(l), std::move(r), pos);
}
FormulaPtr Formula::iff(FormulaPtr l, FormulaPtr r, std::size_t pos) {
    return binary(FormulaKind::Iff, std::move(l), std::move(r), pos);
}

FormulaPtr Formula::quantifier(FormulaKind q, std::string var, FormulaPtr body,
                               std::size_t pos) {
    bool set_sorted = q == FormulaKind::ForallSet || q == FormulaKind::ExistsSet;
    if (set_sorted != is_set_name(var))
        throw UsageError("quantifier sort does not match variable case: " + var);
    auto f = std::const_pointer_cast<Formula>(make_node(q, pos));
    f->var = std::move(var);
    f->a = std::move(body);
    return f;
}

bool Formula::equals(const Formula& other) const {
    if (kind != other.kind) return false;
    switch (kind) {
        case FormulaKind::Member:
            return lhs == other.lhs && var == other.var;
        case FormulaKind::Eq:
        case FormulaKind::Less:
            return lhs == other.lhs && rhs == other.rhs;
        case FormulaKind::Not:
            return a->equals(*other.a);
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
        case FormulaKind::Iff:
            return a->equals(*other.a) && b->equals(*other.b);
        case FormulaKind::ForallElem:
        case FormulaKind::ExistsElem:
        case FormulaKind::ForallSet:
        case FormulaKind::ExistsSet:
            return var == other.var && a->equals(*other.a);
    }
    return false;
}

namespace {

int precedence(FormulaKind k) {
    switch (k) {
        case FormulaKind::ForallElem:
        case FormulaKind::ExistsElem:
        case FormulaKind::ForallSet:
        case FormulaKind::ExistsSet:
            return 0;
        case FormulaKind::Iff: return 1;
        case FormulaKind::Implies: return 2;
        case FormulaKind::Or: return 3;
        case FormulaKind::And: return 4;
        case FormulaKind::Not: return 5;
        default: return 6;
    }
}

void print(const Formula& f, int parent_prec, std::string& out) {
    int prec = precedence(f.kind);
    bool parens = prec < parent_prec;
    if (parens) out += "(";
    switch (f.kind) {
        case FormulaKind::Member:
            out += f.lhs.str() + " in " + f.var;
            break;
        case FormulaKind::Eq:
            out += f.lhs.str() + " = " + f.rhs.str();
            break;
        case FormulaKind::Less:
            out += f.lhs.str() + " < " + f.rhs.str();
            break;
        case FormulaKind::Not:
            out += "!";
            print(*f.a, prec, out);
            break;
        case FormulaKind::And:
            print(*f.a, prec, out);
            out += " & ";
            print(*f.b, prec + 1, out);
            break;
        case FormulaKind::Or:
            print(*f.a, prec, out);
            out += " | ";
            print(*f.b, prec + 1, out);
            break;
        case FormulaKind::Implies:
            print(*f.a, prec + 1, out);  // right-associative
            out += " -> ";
            print(*f.b, prec, out);
            break;
        case FormulaKind::Iff:
            print(*f.a, prec, out);
            out += " <-> ";
            print(*f.b, prec + 1, out);
            break;
        case FormulaKind::ForallElem:
        case FormulaKind::ForallSet:
            out += "forall " + f.var + ". ";
            print(*f.a, prec, out);
            break;
        case FormulaKind::ExistsElem:
        case FormulaKind::ExistsSet:
            out += "exists " + f.var + ". ";
            print(*f.a, prec, out);
            break;
    }
    if (parens) out += ")";
}

}  // namespace

std::string Formula::str() const {
    std::string out;
    print(*this, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class TokKind { Ident, Number, LParen, RParen, Dot, Amp, Pipe, Bang, Arrow, DArrow, Eq, Less, Plus, End };

struct Token {
    TokKind kind;
    std::string text;
    Nat number = 0;
    std::size_t pos = 0;
};

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;

    Token next() {
        while (pos < text.size() &&
               (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
            ++pos;
        if (pos >= text.size()) return {TokKind::End, "", 0, pos};
        std::size_t start = pos;
        char c = text[pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                    text[pos] == '\''))
                ++pos;
            return {TokKind::Ident, std::string(text.substr(start, pos - start)), 0, start};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Nat value = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                if (value > (UINT64_MAX - 9) / 10)
                    throw ParseError("numeral too large", start);
                value = value * 10 + static_cast<Nat>(text[pos] - '0');
                ++pos;
            }
            return {TokKind::Number, std::string(text.substr(start, pos - start)), value, start};
        }
        ++pos;
        switch (c) {
            case '(': return {TokKind::LParen, "(", 0, start};
            case ')': return {TokKind::RParen, ")", 0, start};
            case '.': return {TokKind::Dot, ".", 0, start};
            case '&': return {TokKind::Amp, "&", 0, start};
            case '|': return {TokKind::Pipe, "|", 0, start};
            case '!': return {TokKind::Bang, "!", 0, start};
            case '=': return {TokKind::Eq, "=", 0, start};
            case '+': return {TokKind::Plus, "+", 0, start};
            case '<':
                if (pos < text.size() && text[pos] == '-' && pos + 1 < text.size() &&
                    text[pos + 1] == '>') {
                    pos += 2;
                    return {TokKind::DArrow, "<->", 0, start};
                }
                return {TokKind::Less, "<", 0, start};
            case '-':
                if (pos < text.size() && text[pos] == '>') {
                    ++pos;
                    return {TokKind::Arrow, "->", 0, start};
                }
                throw ParseError("stray '-'", start);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
};

struct FormulaParser {
    std::deque<Token> tokens;

    explicit FormulaParser(std::string_view text) {
        Lexer lex{text, 0};
        for (;;) {
            Token t = lex.next();
            tokens.push_back(t);
            if (t.kind == TokKind::End) break;
        }
    }

    const Token& peek(std::size_t k = 0) const {
        return tokens[std::min(k, tokens.size() - 1)];
    }

    Token take() {
        Token t = tokens.front();
        if (tokens.size() > 1) tokens.pop_front();
        return t;
    }

    bool accept(TokKind k) {
        if (peek().kind == k) {
            take();
            return true;
        }
        return false;
    }

    void expect(TokKind k, const char* what) {
        if (!accept(k)) throw ParseError(std::string("expected ") + what, peek().pos);
    }

    Term parse_term() {
        Term t;
        t.pos = peek().pos;
        for (;;) {
            Token tok = take();
            if (tok.kind == TokKind::Number) {
                t.parts.push_back(Term::Part{true, tok.number, {}});
            } else if (tok.kind == TokKind::Ident) {
                if (is_set_name(tok.text))
                    throw ParseError("set variable '" + tok.text + "' used as an element term",
                                     tok.pos);
                if (tok.text == "forall" || tok.text == "exists" || tok.text == "in")
                    throw ParseError("expected an element term", tok.pos);
                t.parts.push_back(Term::Part{false, 0, tok.text});
            } else {
                throw ParseError("expected an element term", tok.pos);
            }
            if (!accept(TokKind::Plus)) break;
        }
        return t;
    }

    FormulaPtr parse_atom_or_group() {
        const Token& t = peek();
        if (t.kind == TokKind::LParen) {
            take();
            FormulaPtr f = parse_formula_full();
            expect(TokKind::RParen, ")");
            return f;
        }
        if (t.kind == TokKind::Bang) {
            std::size_t pos = take().pos;
            return Formula::negation(parse_atom_or_group(), pos);
        }
        if (t.kind == TokKind::Ident && (t.text == "forall" || t.text == "exists")) {
            Token q = take();
            Token var = take();
            if (var.kind != TokKind::Ident)
                throw ParseError("expected a variable after " + q.text, var.pos);
            expect(TokKind::Dot, ". after quantified variable");
            FormulaPtr body = parse_formula_full();
            FormulaKind kind;
            if (q.text == "forall")
                kind = is_set_name(var.text) ? FormulaKind::ForallSet : FormulaKind::ForallElem;
            else
                kind = is_set_name(var.text) ? FormulaKind::ExistsSet : FormulaKind::ExistsElem;
            return Formula::quantifier(kind, var.text, std::move(body), q.pos);
        }
        // An atom.
        std::size_t pos = t.pos;
        Term lhs = parse_term();
        Token op = take();
        switch (op.kind) {
            case TokKind::Eq:
                return Formula::eq(std::move(lhs), parse_term(), pos);
            case TokKind::Less:
                return Formula::less(std::move(lhs), parse_term(), pos);
            case TokKind::Ident:
                if (op.text == "in") {
                    Token set = take();
                    if (set.kind != TokKind::Ident)
                        throw ParseError("expected a set variable after 'in'", set.pos);
                    if (!is_set_name(set.text))
                        throw ParseError("'" + set.text + "' is element-sorted; membership needs a set variable",
                                         set.pos);
                    return Formula::member(std::move(lhs), set.text, pos);
                }
                [[fallthrough]];
            default:
                throw ParseError("expected =, < or 'in' after a term", op.pos);
        }
    }

    FormulaPtr parse_and() {
        FormulaPtr f = parse_atom_or_group();
        while (peek().kind == TokKind::Amp) {
            std::size_t pos = take().pos;
            f = Formula::conj(std::move(f), parse_atom_or_group(), pos);
        }
        return f;
    }

    FormulaPtr parse_or() {
        FormulaPtr f = parse_and();
        while (peek().kind == TokKind::Pipe) {
            std::size_t pos = take().pos;
            f = Formula::disj(std::move(f), parse_and(), pos);
        }
        return f;
    }

    FormulaPtr parse_implies() {
        FormulaPtr f = parse_or();
        if (peek().kind == TokKind::Arrow) {
            std::size_t pos = take().pos;
            return Formula::implies(std::move(f), parse_implies(), pos);
        }
        return f;
    }

    FormulaPtr parse_formula_full() {
        FormulaPtr f = parse_implies();
        while (peek().kind == TokKind::DArrow) {
            std::size_t pos = take().pos;
            f = Formula::iff(std::move(f), parse_implies(), pos);
        }
        return f;
    }
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
    FormulaParser p(text);
    FormulaPtr f = p.parse_formula_full();
    if (p.peek().kind != TokKind::End)
        throw ParseError("trailing input after formula", p.peek().pos);
    return f;
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound,
                  FreeVariables& out) {
    auto note_term = [&](const Term& t) {
        for (const auto& p : t.parts) {
            if (p.is_const) continue;
            if (std::find(bound.begin(), bound.end(), p.var) != bound.end()) continue;
            if (std::find(out.elems.begin(), out.elems.end(), p.var) == out.elems.end())
                out.elems.push_back(p.var);
        }
    };
    switch (f.kind) {
        case FormulaKind::Member:
            note_term(f.lhs);
            if (std::find(bound.begin(), bound.end(), f.var) == bound.end() &&
                std::find(out.sets.begin(), out.sets.end(), f.var) == out.sets.end())
                out.sets.push_back(f.var);
            break;
        case FormulaKind::Eq:
        case FormulaKind::Less:
            note_term(f.lhs);
            note_term(f.rhs);
            break;
        case FormulaKind::Not:
            collect_free(*f.a, bound, out);
            break;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
        case FormulaKind::Iff:
            collect_free(*f.a, bound, out);
            collect_free(*f.b, bound, out);
            break;
        case FormulaKind::ForallElem:
        case FormulaKind::ExistsElem:
        case FormulaKind::ForallSet:
        case FormulaKind::ExistsSet:
            bound.push_back(f.var);
            collect_free(*f.a, bound, out);
            bound.pop_back();
            break;
    }
}

}  // namespace

FreeVariables free_variables(const Formula& f) {
    FreeVariables out;
    std::vector<std::string> bound;
    collect_free(f, bound, out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Env {
    const BoundedStructure& structure;
    Strategy strategy;
    std::map<std::string, Nat> elems;
    std::map<std::string, SetValue> sets;
};

std::optional<Nat> eval_term(const Term& t, const Env& env) {
    Nat acc = 0;
    bool first = true;
    for (const auto& p : t.parts) {
        Nat v;
        if (p.is_const) {
            v = p.value;
        } else {
            auto it = env.elems.find(p.var);
            if (it == env.elems.end())
                throw UsageError("open formula: element variable '" + p.var +
                                 "' has no assignment");
            v = it->second;
        }
        if (v >= env.structure.bound) return std::nullopt;
        if (first) {
            acc = v;
            first = false;
        } else {
            acc += v;  // guarded partial addition
            if (acc >= env.structure.bound) return std::nullopt;
        }
    }
    return acc;
}

bool eval_node(const Formula& f, Env& env);

// Guarded Horn recognition for the Lfp strategy: the node must be
// forall S. (hypothesis) -> target in S, where the hypothesis is a
// conjunction of base clauses `t in S` and closure clauses
// `forall x. (x in S -> u in S)` with u containing x exactly once.
struct HornShape {
    std::vector<const Term*> base;
    struct Step {
        const std::string* var;
        const Term* term;
    };
    std::vector<Step> steps;
    const Term* target;
};

bool collect_horn_clauses(const Formula& f, const std::string& set_name, HornShape& out) {
    if (f.kind == FormulaKind::And)
        return collect_horn_clauses(*f.a, set_name, out) &&
               collect_horn_clauses(*f.b, set_name, out);
    if (f.kind == FormulaKind::Member && f.var == set_name) {
        out.base.push_back(&f.lhs);
        return true;
    }
    if (f.kind == FormulaKind::ForallElem) {
        const Formula& body = *f.a;
        if (body.kind != FormulaKind::Implies) return false;
        const Formula& hyp = *body.a;
        const Formula& conc = *body.b;
        if (hyp.kind != FormulaKind::Member || hyp.var != set_name) return false;
        if (hyp.lhs.parts.size() != 1 || hyp.lhs.parts[0].is_const ||
            hyp.lhs.parts[0].var != f.var)
            return false;
        if (conc.kind != FormulaKind::Member || conc.var != set_name) return false;
        std::size_t occurrences = 0;
        for (const auto& p : conc.lhs.parts)
            if (!p.is_const && p.var == f.var) ++occurrences;
        if (occurrences != 1) return false;
        out.steps.push_back(HornShape::Step{&f.var, &conc.lhs});
        return true;
    }
    return false;
}

std::optional<HornShape> match_guarded_horn(const Formula& f) {
    if (f.kind != FormulaKind::ForallSet) return std::nullopt;
    const Formula& body = *f.a;
    if (body.kind != FormulaKind::Implies) return std::nullopt;
    const Formula& target = *body.b;
    if (target.kind != FormulaKind::Member || target.var != f.var) return std::nullopt;
    HornShape shape;
    shape.target = &target.lhs;
    if (!collect_horn_clauses(*body.a, f.var, shape)) return std::nullopt;
    return shape;
}

bool eval_lfp_forall_set(const Formula& f, Env& env) {
    auto shape = match_guarded_horn(f);
    if (!shape)
        throw StrategyError(
            "Lfp strategy needs a universal set quantifier in guarded Horn shape "
            "(base memberships and single-variable closure steps implying a membership)");
    Nat bound = env.structure.bound;
    // An undefined base term holds vacuously and seeds nothing.
    std::vector<Nat> base;
    for (const Term* t : shape->base) {
        auto v = eval_term(*t, env);
        if (v) base.push_back(*v);
    }
    auto target = eval_term(*shape->target, env);
    SetValue closure(bound, false);
    std::vector<Nat> work = base;
    for (Nat b : base) closure[b] = true;
    while (!work.empty()) {
        Nat a = work.back();
        work.pop_back();
        for (const auto& step : shape->steps) {
            // Evaluate the step term with the closure variable at a.
            Nat acc = 0;
            bool defined = true;
            bool first = true;
            for (const auto& p : step.term->parts) {
                Nat v;
                if (p.is_const) {
                    v = p.value;
                } else if (p.var == *step.var) {
                    v = a;
                } else {
                    auto it = env.elems.find(p.var);
                    if (it == env.elems.end())
                        throw UsageError("open formula: element variable '" + p.var +
                                         "' has no assignment");
                    v = it->second;
                }
                if (v >= bound) {
                    defined = false;
                    break;
                }
                if (first) {
                    acc = v;
                    first = false;
                } else {
                    acc += v;
                    if (acc >= bound) {
                        defined = false;
                        break;
                    }
                }
            }
            if (defined && !closure[acc]) {
                closure[acc] = true;
                work.push_back(acc);
            }
        }
    }
    if (!target) return true;  // an undefined target atom holds vacuously
    return closure[*target];
}

constexpr Nat kEnumBoundLimit = 20;

bool eval_set_quantifier(const Formula& f, Env& env) {
    bool universal = f.kind == FormulaKind::ForallSet;
    if (env.strategy == Strategy::Lfp) {
        if (!universal)
            throw StrategyError("Lfp strategy does not handle existential set quantifiers");
        return eval_lfp_forall_set(f, env);
    }
    Nat bound = env.structure.bound;
    if (bound > kEnumBoundLimit)
        throw BoundError("subset enumeration over 2^" + std::to_string(bound) +
                         " sets is infeasible; use the lfp strategy or bound <= " +
                         std::to_string(kEnumBoundLimit));
    auto saved = env.sets.find(f.var) != env.sets.end()
                     ? std::optional<SetValue>(env.sets[f.var])
                     : std::nullopt;
    SetValue subset(bound, false);
    bool result = universal;
    for (;;) {
        env.sets[f.var] = subset;
        bool v = eval_node(*f.a, env);
        if (universal && !v) {
            result = false;
            break;
        }
        if (!universal && v) {
            result = true;
            break;
        }
        // Next subset: binary increment.
        std::size_t i = 0;
        while (i < bound && subset[i]) {
            subset[i] = false;
            ++i;
        }
        if (i == bound) break;
        subset[i] = true;
    }
    if (saved)
        env.sets[f.var] = *saved;
    else
        env.sets.erase(f.var);
    return result;
}

bool eval_node(const Formula& f, Env& env) {
    switch (f.kind) {
        case FormulaKind::Member: {
            auto v = eval_term(f.lhs, env);
            // An out-of-domain value asserts nothing of the set: the
            // membership atom holds vacuously. This is what weakens
            // inductive hypotheses near the boundary instead of making
            // them unsatisfiable.
            if (!v) return true;
            auto it = env.sets.find(f.var);
            if (it == env.sets.end())
                throw UsageError("open formula: set variable '" + f.var +
                                 "' has no assignment");
            return it->second[*v];
        }
        case FormulaKind::Eq: {
            auto l = eval_term(f.lhs, env);
            auto r = eval_term(f.rhs, env);
            return l && r && *l == *r;
        }
        case FormulaKind::Less: {
            auto l = eval_term(f.lhs, env);
            auto r = eval_term(f.rhs, env);
            return l && r && *l < *r;
        }
        case FormulaKind::Not:
            return !eval_node(*f.a, env);
        case FormulaKind::And:
            return eval_node(*f.a, env) && eval_node(*f.b, env);
        case FormulaKind::Or:
            return eval_node(*f.a, env) || eval_node(*f.b, env);
        case FormulaKind::Implies:
            return !eval_node(*f.a, env) || eval_node(*f.b, env);
        case FormulaKind::Iff:
            return eval_node(*f.a, env) == eval_node(*f.b, env);
        case FormulaKind::ForallElem:
        case FormulaKind::ExistsElem: {
            bool universal = f.kind == FormulaKind::ForallElem;
            auto it = env.elems.find(f.var);
            auto saved = it != env.elems.end() ? std::optional<Nat>(it->second) : std::nullopt;
            bool result = universal;
            for (Nat x = 0; x < env.structure.bound; ++x) {
                env.elems[f.var] = x;
                bool v = eval_node(*f.a, env);
                if (universal && !v) {
                    result = false;
                    break;
                }
                if (!universal && v) {
                    result = true;
                    break;
                }
            }
            if (saved)
                env.elems[f.var] = *saved;
            else
                env.elems.erase(f.var);
            return result;
        }
        case FormulaKind::ForallSet:
        case FormulaKind::ExistsSet:
            return eval_set_quantifier(f, env);
    }
    throw UsageError("bad formula kind");
}

}  // namespace

bool eval(const BoundedStructure& s, const Formula& f, const Assignment& assignment,
          Strategy strategy) {
    if (s.bound == 0) throw UsageError("bounded structure needs bound >= 1");
    FreeVariables free = free_variables(f);
    for (const auto& name : free.elems) {
        auto it = assignment.elems.find(name);
        if (it == assignment.elems.end())
            throw UsageError("open formula: element variable '" + name + "' has no assignment");
        if (it->second >= s.bound)
            throw UsageError("assignment for '" + name + "' is outside the domain");
    }
    for (const auto& name : free.sets) {
        auto it = assignment.sets.find(name);
        if (it == assignment.sets.end())
            throw UsageError("open formula: set variable '" + name + "' has no assignment");
        if (it->second.size() != s.bound)
            throw UsageError("set assignment for '" + name + "' has the wrong domain size");
    }
    Env env{s, strategy, assignment.elems, assignment.sets};
    return eval_node(f, env);
}

SetValue least_closed_set(Nat bound, const std::vector<Nat>& base,
                          const std::vector<Nat>& deltas) {
    SetValue closure(bound, false);
    std::vector<Nat> work;
    for (Nat b : base) {
        if (b < bound && !closure[b]) {
            closure[b] = true;
            work.push_back(b);
        }
    }
    while (!work.empty()) {
        Nat a = work.back();
        work.pop_back();
        for (Nat d : deltas) {
            if (d >= bound || a + d >= bound) continue;
            Nat next = a + d;
            if (!closure[next]) {
                closure[next] = true;
                work.push_back(next);
            }
        }
    }
    return closure;
}

// ---------------------------------------------------------------------------
// Defined arithmetic predicates

FormulaPtr divides_formula() {
    return divides_formula(Term::variable("m"), Term::variable("n"), "");
}

FormulaPtr divides_formula(const Term& m, const Term& n, const std::string& suffix) {
    std::string set_name = "S" + suffix;
    std::string elem_name = "x" + suffix;
    Term x = Term::variable(elem_name);
    FormulaPtr base = Formula::member(Term::constant(0), set_name);
    FormulaPtr closure = Formula::quantifier(
        FormulaKind::ForallElem, elem_name,
        Formula::implies(Formula::member(x, set_name),
                         Formula::member(x.plus(m), set_name)));
    FormulaPtr target = Formula::member(n, set_name);
    return Formula::quantifier(
        FormulaKind::ForallSet, set_name,
        Formula::implies(Formula::conj(std::move(base), std::move(closure)),
                         std::move(target)));
}

FormulaPtr consec_product_formula(Nat m, Nat n) {
    Term k = Term::variable("k");
    FormulaPtr n_div_k = divides_formula(Term::constant(n), k, "0");
    FormulaPtr m_div_k = divides_formula(Term::constant(m), k, "1");
    FormulaPtr m1_div_k = divides_formula(Term::constant(m).plus_const(1), k, "2");
    return Formula::quantifier(
        FormulaKind::ForallElem, "k",
        Formula::iff(std::move(n_div_k),
                     Formula::conj(std::move(m_div_k), std::move(m1_div_k))));
}

bool mso_divides(Nat m, Nat n, Nat bound, Strategy strategy) {
    if (m >= bound || n >= bound)
        throw BoundError("mso_divides arguments must be below the bound");
    static const FormulaPtr formula = divides_formula();
    Assignment asg;
    asg.elems["m"] = m;
    asg.elems["n"] = n;
    return eval(BoundedStructure{bound}, *formula, asg, strategy);
}

bool mso_consec_mult(Nat m, Nat n, Nat bound, Strategy strategy) {
    if (m >= (Nat(1) << 31) || bound <= m * (m + 1))
        throw BoundError("mso_consec_mult needs bound > m*(m+1)");
    if (n >= bound) throw BoundError("mso_consec_mult needs n < bound");
    FormulaPtr formula = consec_product_formula(m, n);
    return eval(BoundedStructure{bound}, *formula, {}, strategy);
}

bool mso_mult(Nat m, Nat k, Nat n, Nat bound, Strategy strategy) {
    MsoSession session(bound, strategy);
    return session.mult(m, k, n);
}

MsoSession::MsoSession(Nat bound, Strategy strategy)
    : bound_(bound), strategy_(strategy) {
    if (bound == 0) throw UsageError("bounded structure needs bound >= 1");
}

bool MsoSession::divides(Nat m, Nat n) { return mso_divides(m, n, bound_, strategy_); }

bool MsoSession::consec_mult(Nat m, Nat n) {
    return mso_consec_mult(m, n, bound_, strategy_);
}

std::optional<Nat> MsoSession::consec_partner(Nat x) {
    auto it = partners_.find(x);
    if (it != partners_.end()) return it->second;
    std::optional<Nat> found;
    for (Nat y = 0; y < bound_; ++y) {
        if (mso_consec_mult(x, y, bound_, strategy_)) {
            found = y;
            break;
        }
    }
    partners_[x] = found;
    return found;
}

bool MsoSession::mult(Nat m, Nat k, Nat n) {
    if (m >= (Nat(1) << 30) || k >= (Nat(1) << 30))
        throw BoundError("mso_mult arguments too large");
    Nat sum = m + k;
    if (bound_ <= sum * (sum + 1))
        throw BoundError("mso_mult needs bound > (m+k)*(m+k+1)");
    if (n >= bound_) throw BoundError("mso_mult needs n < bound");
    auto a = consec_partner(m + k);
    auto b = consec_partner(m);
    auto c = consec_partner(k);
    if (!a || !b || !c) return false;
    // (m+k)(m+k+1) = m(m+1) + k(k+1) + n + n, with bounded addition.
    Nat acc = *b;
    for (Nat piece : {*c, n, n}) {
        acc += piece;
        if (acc >= bound_) return false;
    }
    return acc == *a;
}

}  // namespace hahn::mso
