#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "opendef/decide.hpp"
#include "opendef/formula.hpp"
#include "opendef/structure.hpp"

namespace opendef {

// Diagram pieces for one target tuple abar of arity m.  Variables x1..xm
// stand for the entries of abar positionally.

// Conjunction over all index tuples i1..ir in {1..m}^r (lexicographic) of
// R(x_i1,...,x_ir) or its negation, matching the truth value at abar.
Formula delta_block(const Structure& s, const Tuple& abar, int sym);

// Conjunction of every relation block (vocabulary order) followed by one
// equality literal per index pair i < j (lexicographic): x_i = x_j when
// abar_i == abar_j, else x_i != x_j.  Satisfying assignments are exactly the
// images of abar under subisomorphisms defined on its entries.
Formula delta_tuple(const Structure& s, const Tuple& abar);

// Disjunction of delta_tuple over the target tuples in input order; the
// empty target yields the false constant.
Formula delta_target(const Structure& s, const Target& t);

struct DeltaBundle {
    std::vector<std::pair<Tuple, Formula>> per_tuple;  // target input order
    Formula target;
    ExistSentence sentence;
};

// pre: target nonempty
DeltaBundle make_delta_bundle(const Structure& s, const Target& t);

// Existential sentence over (|T|+1)*m variables, viewing variable
// x_{(i-1)*m+c} as entry c of block i.  The matrix conjoins, for every block
// pair i < j, a disjunct saying the blocks differ in some coordinate, and
// then delta_target shifted onto each block.  The sentence is satisfiable
// iff some tuple outside the target satisfies delta_target, i.e. iff the
// target is not definable by an open formula.
// pre: target nonempty
ExistSentence phi_instance(const Structure& s, const Target& t);

struct SynthesisResult {
    std::optional<Formula> formula;   // present iff definable
    std::optional<Witness> witness;   // present iff not definable
};

// Decides definability and, on success, returns delta_target as the defining
// formula.  With verify set, additionally recomputes the formula's extension
// and throws std::logic_error on mismatch; BudgetError propagates when
// |A|^m exceeds the budget.
SynthesisResult synthesize(const Structure& s, const Target& t, bool verify = true,
                           long long budget = kExtensionBudget);

// Atomic formulas over x1..xm whose truth differs between the two
// assignments.  Relation atoms come first (vocabulary order, index tuples
// lexicographically), then equality atoms x_i = x_j for i < j.
struct AtomDiff {
    std::vector<Formula> rel_diffs;
    std::vector<Formula> eq_diffs;
};

// pre: a and b have equal size and entries inside the domain
AtomDiff atom_diff(const Structure& s, const Tuple& a, const Tuple& b);

}  // namespace opendef
