#pragma once

#include <string>
#include <vector>

#include "opendef/formula.hpp"
#include "opendef/structure.hpp"

namespace opendef {

// Instance family over 4n elements with one n-ary relation.  Elements, in
// order: a_1..a_n are 0..n-1, b_1..b_n are n..2n-1, c_1..c_n are 2n..3n-1,
// and the padding elements *_1..*_n are 3n..4n-1.  The relation holds the
// three base rows (a_1..a_n), (b_1..b_n), (c_1..c_n) plus every row of the
// matrices M_1..M_n, where row i of M_1 is (a_i, *_1, ..., *_1) and row i of
// M_j for j >= 2 puts b_i in column 1, c_i in column j, and *_j elsewhere.
// The target is the single n^2-tuple flattening M_1 row by row.
struct HardInstance {
    int n = 0;
    Structure structure;
    Target target;
};

// pre: n >= 3
HardInstance gen_hard(int n);

// Row-major flattening of M_1.
Tuple base_matrix(int n);

// Row-major flattening of the matrix whose row i is row i of M_{jbar[i]}.
// pre: jbar has n entries, each in 2..n
Tuple mixed_matrix(int n, const std::vector<int>& jbar);

inline constexpr long long kFamilyBudget = 10'000'000;

enum class AlphaVariant { rows, columns };

// Variables x_{(i-1)*n+c} read entry (i, c) of an n-by-n matrix of domain
// elements.  The rows variant asserts column 1 and every row are relation
// tuples; the columns variant asserts every column is one.
Formula alpha(int n, AlphaVariant variant = AlphaVariant::rows);

// R(x_{1 j_1}, ..., x_{n j_n}): row i contributes its column j_i entry.
// pre: jbar has n entries, each in 2..n
Formula lambda_atom(int n, const std::vector<int>& jbar);

// Conjunction of the negated lambda atoms over all jbar in {2..n}^n,
// lexicographically.  Throws BudgetError when the literal count times n
// exceeds budget.
Formula beta(int n, long long budget = kFamilyBudget);

// Every assignment of the instance's elements satisfying alpha, sorted
// lexicographically.  Enumerates candidate rows (or columns) directly
// instead of scanning all |A|^(n^2) assignments.  Throws BudgetError when
// the enumeration would materialize more than budget entries.
std::vector<Tuple> alpha_satisfiers(const HardInstance& inst,
                                    AlphaVariant variant = AlphaVariant::rows,
                                    long long budget = kFamilyBudget);

// Everything check-family reports about one family member.  The satisfier
// lists are sorted; survivor lines preserve that order.
struct FamilyReport {
    int n = 0;
    AlphaVariant variant = AlphaVariant::rows;
    int domain_size = 0;
    long long relation_tuples = 0;
    int target_arity = 0;
    long long kappa = 0;
    long long alpha_literals = 0;
    long long beta_literals = 0;
    long long family_size = 0;  // base matrix plus all mixed matrices
    std::vector<Tuple> satisfiers;
    long long beyond_family = 0;
    bool alpha_at_base = false;
    bool beta_at_base = false;
    std::vector<Tuple> alpha_beta_satisfiers;
    std::vector<Tuple> extra_survivors;  // alpha&beta satisfiers besides base
    bool defines_target = false;
    bool decide_definable = false;
    bool drop_one_admits = false;    // dropping ~lambda_jbar admits M^jbar
    bool unique_forward = false;     // lambda_jbar is the only atom gained at M^jbar
    bool unique_symmetric = false;   // ... and the only atom changed at all
    long long symmetric_rel_diff_max = 0;
    long long eq_diff_min = 0;
    long long eq_diff_max = 0;
    bool eq_diff_nonempty = false;
    long long probe_literals = 0;    // alpha plus x_{i2}=x_{i3} for each row
    std::vector<Tuple> probe_satisfiers;
    bool probe_defines = false;
};

// Measures how the generated instance behaves against the formulas above.
// Work scales with (n-1)^n * n^(2n); the default budget admits n = 3 and 4.
FamilyReport verify_family(int n, AlphaVariant variant = AlphaVariant::rows,
                           long long budget = kFamilyBudget);

// Stable key: value lines, one per report field, trailing newline.
std::string to_text(const FamilyReport& report);

}  // namespace opendef
