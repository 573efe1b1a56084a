#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hahn/error.hpp"

namespace hahn::mso {

using Nat = std::uint64_t;

/// Evaluation strategy for set quantifiers. Enum walks all 2^B subsets;
/// Lfp computes a least fixed point and applies only to universal set
/// quantifiers in guarded Horn shape. The two agree wherever both apply.
enum class Strategy { Enum, Lfp };

Strategy strategy_from_string(std::string_view name);

/// An element-sort term: a sum of variables and numeral constants.
/// Addition is partial in the bounded structure (defined iff the sum
/// stays below the bound).
struct Term {
    struct Part {
        bool is_const = false;
        Nat value = 0;
        std::string var;
        bool operator==(const Part&) const = default;
    };
    std::vector<Part> parts;
    std::size_t pos = 0;

    static Term constant(Nat v);
    static Term variable(std::string name);
    Term plus(const Term& other) const;
    Term plus_const(Nat v) const;

    bool contains_var(const std::string& name) const;
    std::string str() const;
    bool operator==(const Term& other) const { return parts == other.parts; }
};

enum class FormulaKind {
    Member,      // term in SetVar
    Eq,          // term = term
    Less,        // term < term
    Not,
    And,
    Or,
    Implies,
    Iff,
    ForallElem,
    ExistsElem,
    ForallSet,
    ExistsSet,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// AST node for a two-sorted formula. Lowercase identifiers are element
/// variables, uppercase identifiers set variables; sorts are checked at
/// parse and build time.
struct Formula {
    FormulaKind kind;
    std::size_t pos = 0;
    Term lhs, rhs;     // atoms
    std::string var;   // Member: set name; quantifiers: bound variable
    FormulaPtr a, b;   // children

    static FormulaPtr member(Term t, std::string set_name, std::size_t pos = 0);
    static FormulaPtr eq(Term l, Term r, std::size_t pos = 0);
    static FormulaPtr less(Term l, Term r, std::size_t pos = 0);
    static FormulaPtr negation(FormulaPtr f, std::size_t pos = 0);
    static FormulaPtr conj(FormulaPtr l, FormulaPtr r, std::size_t pos = 0);
    static FormulaPtr disj(FormulaPtr l, FormulaPtr r, std::size_t pos = 0);
    static FormulaPtr implies(FormulaPtr l, FormulaPtr r, std::size_t pos = 0);
    static FormulaPtr iff(FormulaPtr l, FormulaPtr r, std::size_t pos = 0);
    static FormulaPtr quantifier(FormulaKind q, std::string var, FormulaPtr body,
                                 std::size_t pos = 0);

    /// Structural equality, ignoring source positions.
    bool equals(const Formula& other) const;
    std::string str() const;
};

/// Grammar (ASCII): quantifiers `forall`/`exists` + variable + `.`,
/// connectives `& | -> <-> !`, atoms `x+y=z`, `x in S`, `x=y`, `x<y`,
/// numerals as element constants. Lowercase variables are element-sorted,
/// uppercase set-sorted. Throws ParseError with a position on syntax or
/// sort errors.
FormulaPtr parse_formula(std::string_view text);

struct FreeVariables {
    std::vector<std::string> elems;
    std::vector<std::string> sets;
};
FreeVariables free_variables(const Formula& f);

/// The bounded model: element domain {0,...,bound-1}, set sort all of its
/// subsets, x+y defined iff the sum stays below the bound. Equality and
/// order atoms with an undefined side are false; a membership atom with
/// an undefined term holds vacuously (an out-of-domain value asserts
/// nothing of the set). The vacuous reading is what keeps inductive
/// closure hypotheses satisfiable near the boundary, so the bounded
/// divisibility predicate stays correct for every element of the domain
/// and both evaluation strategies agree.
struct BoundedStructure {
    Nat bound;
};

using SetValue = std::vector<bool>;  // indexed by element, size == bound

struct Assignment {
    std::map<std::string, Nat> elems;
    std::map<std::string, SetValue> sets;
};

bool eval(const BoundedStructure& s, const Formula& f, const Assignment& assignment,
          Strategy strategy);

/// Least subset of [0, bound) containing the base values and closed under
/// a -> a + delta whenever the step stays below the bound.
SetValue least_closed_set(Nat bound, const std::vector<Nat>& base,
                          const std::vector<Nat>& deltas);

/// The divisibility predicate: forall S. (0 in S & forall x. (x in S ->
/// x+m in S)) -> n in S, with free variables m and n.
FormulaPtr divides_formula();
/// Same predicate over explicit terms, with freshly suffixed bound
/// variables so instances can be nested.
FormulaPtr divides_formula(const Term& m, const Term& n, const std::string& suffix);
/// n = m*(m+1), expressed through divisibility: forall k. (n|k <-> (m|k
/// & (m+1)|k)).
FormulaPtr consec_product_formula(Nat m, Nat n);

/// m | n over the bounded structure; exact for all n < bound.
bool mso_divides(Nat m, Nat n, Nat bound, Strategy strategy);
/// n == m*(m+1); requires bound > m*(m+1).
bool mso_consec_mult(Nat m, Nat n, Nat bound, Strategy strategy = Strategy::Lfp);
/// n == m*k, derived from consecutive products and bounded addition;
/// requires bound > (m+k)*(m+k+1).
bool mso_mult(Nat m, Nat k, Nat n, Nat bound, Strategy strategy = Strategy::Lfp);

/// Memoizing facade over the defined predicates, for bulk verification
/// against one bounded structure. Not safe to share across threads.
class MsoSession {
public:
    MsoSession(Nat bound, Strategy strategy);

    Nat bound() const { return bound_; }
    bool divides(Nat m, Nat n);
    bool consec_mult(Nat m, Nat n);
    bool mult(Nat m, Nat k, Nat n);

private:
    /// The unique y with consec_mult(x, y), i.e. y = x*(x+1), found by
    /// evaluating the defining formula over the whole domain.
    std::optional<Nat> consec_partner(Nat x);

    Nat bound_;
    Strategy strategy_;
    std::map<Nat, std::optional<Nat>> partners_;
};

}  // namespace hahn::mso
