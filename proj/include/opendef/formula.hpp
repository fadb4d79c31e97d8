#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opendef/structure.hpp"

namespace opendef {

// Quantifier-free formula over variables x1, x2, ... (1-based indices).
// And/Or are variadic with fixed child order.  The factory functions fold
// constants away, so ConstTrue/ConstFalse only ever appear as a whole
// formula, never under a connective; conj({f}) and disj({f}) collapse to f.
class Formula {
public:
    enum class Kind { True, False, Eq, Rel, Not, And, Or };

    static Formula top();
    static Formula bottom();
    static Formula eq(int lhs, int rhs);
    static Formula rel(std::string name, std::vector<int> vars);
    static Formula negate(Formula f);
    static Formula conj(std::vector<Formula> children);
    static Formula disj(std::vector<Formula> children);

    Kind kind() const { return kind_; }
    int lhs() const { return lhs_; }
    int rhs() const { return rhs_; }
    const std::string& rel_name() const { return name_; }
    const std::vector<int>& rel_vars() const { return vars_; }
    const std::vector<Formula>& children() const { return children_; }
    const Formula& child() const { return children_.front(); }

    bool operator==(const Formula&) const = default;

private:
    Formula() = default;
    Kind kind_ = Kind::True;
    int lhs_ = 0, rhs_ = 0;
    std::string name_;        // Rel
    std::vector<int> vars_;   // Rel
    std::vector<Formula> children_;
};

// exists x1 ... x_{var_count} . matrix
struct ExistSentence {
    int var_count = 0;
    Formula matrix = Formula::top();
    bool operator==(const ExistSentence&) const = default;
};

using Assignment = Tuple;

struct McResult {
    bool sat = false;
    std::optional<Assignment> witness;  // lexicographically least when sat
};

inline constexpr long long kExtensionBudget = 10'000'000;

// largest variable index occurring in f, 0 when none
int max_var(const Formula& f);

// assignment[i-1] is the value of x_i; unknown symbols and short assignments
// raise std::invalid_argument
bool eval_open(const Structure& s, const Formula& f, const Assignment& a);

// all m-tuples satisfying f, in lexicographic order; requires
// max_var(f) <= m and |A|^m within budget
std::vector<Tuple> extension(const Structure& s, const Formula& f, int m,
                             long long budget = kExtensionBudget);

// backtracking over assignments with three-valued pruning; witness is the
// lexicographically least satisfying assignment
McResult mc_exists(const Structure& s, const ExistSentence& phi);

// size_tau(f) = relcount * max{log2 |tau|, 1} + varcount * max{log2 var#, 1}
// where relcount excludes '=' atoms, varcount counts every variable
// occurrence (equality atoms included) and var# is the number of distinct
// variables.  For a sentence the quantifier prefix contributes var_count
// occurrences and all of x1..x_{var_count} to var#.
double formula_size(const Formula& f, const std::vector<RelSymbol>& vocab);
double formula_size(const ExistSentence& phi, const std::vector<RelSymbol>& vocab);

// number of atom occurrences; constants count zero
long long literal_count(const Formula& f);

// variable renaming, used to instantiate a formula on a block of variables
Formula rename_vars(const Formula& f, int offset);

// Canonical text.  Grammar:
//   formula := term ('|' term)* ; term := factor ('&' factor)*
//   factor  := '~' factor | atom | '(' formula ')'
//   atom    := NAME '(' var (',' var)* ')' | var '=' var | var '!=' var
// '!=' abbreviates a negated equality both ways.  ConstTrue prints as x1=x1,
// ConstFalse as ~(x1=x1).
std::string to_text(const Formula& f);
std::string to_text(const ExistSentence& phi);

// parse against a vocabulary; relation names and arities are checked
Formula parse_formula(const std::string& text, const std::vector<RelSymbol>& vocab);
ExistSentence parse_sentence(const std::string& text, const std::vector<RelSymbol>& vocab);

} // namespace opendef
