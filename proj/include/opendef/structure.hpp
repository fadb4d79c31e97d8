#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opendef/errors.hpp"

namespace opendef {

using Tuple = std::vector<int>;

struct RelSymbol {
    std::string name;
    int arity = 0;
    bool operator==(const RelSymbol&) const = default;
};

// Finite relational structure over domain {0, ..., domain_size-1}.
// Relation tuple lists are kept sorted and deduplicated; vocabulary order is
// the declaration order and is significant (canonical printing, formula
// construction walk it in order).
class Structure {
public:
    Structure(int domain_size, std::vector<RelSymbol> vocab,
              std::vector<std::vector<Tuple>> tuples);

    int domain_size() const { return domain_size_; }
    const std::vector<RelSymbol>& vocab() const { return vocab_; }
    // -1 when the name is not in the vocabulary.
    int symbol_index(const std::string& name) const;
    const std::vector<Tuple>& tuples(int sym) const { return tuples_.at(sym); }
    bool holds(int sym, const Tuple& t) const;

    bool operator==(const Structure&) const = default;

private:
    int domain_size_;
    std::vector<RelSymbol> vocab_;
    std::vector<std::vector<Tuple>> tuples_;
};

// Target relation T subseteq A^m.  Tuples keep first-occurrence input order
// (search and formula construction iterate in that order); equality and
// printing use the sorted view, so reparsing canonical text yields an equal
// value.
class Target {
public:
    Target(int arity, std::vector<Tuple> tuples);

    int arity() const { return arity_; }
    const std::vector<Tuple>& tuples() const { return tuples_; }
    std::size_t size() const { return tuples_.size(); }
    bool contains(const Tuple& t) const;
    const std::vector<Tuple>& sorted_tuples() const { return sorted_; }

    bool operator==(const Target& o) const {
        return arity_ == o.arity_ && sorted_ == o.sorted_;
    }

private:
    int arity_;
    std::vector<Tuple> tuples_;
    std::vector<Tuple> sorted_;
};

struct Instance {
    Structure structure;
    Target target;
};

struct SizeReport {
    double size_vocab = 0.0;
    double size_structure = 0.0;
    double size_instance = 0.0;
};

// Throws std::invalid_argument when target arity or entries do not fit the
// structure.  Out-of-range target tuples are rejected here, never dropped.
void validate_instance(const Structure& s, const Target& t);

// Instance file format, one directive per line, '#' starts a comment:
//   vocab NAME ARITY     (zero or more, before domain)
//   domain N
//   rel NAME e1 ... ek   (zero or more)
//   target M
//   tup e1 ... eM        (zero or more)
Instance parse_instance(const std::string& text);

// Lenient loader for model-checking inputs: the target section may be absent
// and a final "exists ..." sentence line is picked up verbatim when present.
struct ParsedFile {
    Structure structure;
    std::optional<Target> target;
    std::optional<std::string> sentence_line;
};
ParsedFile parse_mc_file(const std::string& text);

std::string print_instance(const Structure& s, const Target& t);
// vocab/domain/rel lines only, shared by print_instance and `reduce mc` output
std::string print_structure(const Structure& s);

// Vocabulary is exactly one binary symbol named E whose relation is
// irreflexive and symmetric.
bool is_graph(const Structure& s);

// All logarithms are base 2 under the max{log x, 1} convention.
SizeReport size_measures(const Structure& s, const Target& t);

// kappa = m * |T|, the fixed-parameter of the model-checking reduction
long long param_kappa(const Target& t);

} // namespace opendef
