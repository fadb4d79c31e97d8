#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opendef/structure.hpp"

namespace opendef {

// Injective partial map on domain elements.  Both directions are kept so
// preimage lookups cost the same as image lookups.
class PartialInjection {
public:
    PartialInjection() = default;

    // pre: pairs describe an injective map (no key and no value repeats)
    explicit PartialInjection(const std::vector<std::pair<int, int>>& pairs);

    // Returns false and leaves the map unchanged if the pair would break
    // functionality or injectivity.  Re-inserting an existing pair succeeds.
    bool insert(int key, int value);

    std::optional<int> image(int key) const;
    std::optional<int> preimage(int value) const;
    std::size_t size() const { return fwd_.size(); }

    // Pairs sorted by key.
    const std::map<int, int>& pairs() const { return fwd_; }

    bool operator==(const PartialInjection&) const = default;

private:
    std::map<int, int> fwd_;
    std::map<int, int> inv_;
};

// Counterexample to definability: a subisomorphism g whose domain covers
// some target tuple abar while g(abar) lies outside the target.
struct Witness {
    Tuple source;          // tuple of the target
    Tuple image;           // pointwise image under map, not in the target
    PartialInjection map;
};

// One line, no trailing newline:
//   witness: 0 1 -> 0 2 ; map: 0>0, 1>2
std::string to_text(const Witness& w);

struct Verdict {
    bool definable = true;
    std::optional<Witness> witness;           // present iff not definable
    unsigned long long maps_inspected = 0;
};

// True iff g preserves every relation of s in both directions: whenever a
// tuple lies inside dom(g) its image must hold, and whenever a tuple lies
// inside ran(g) its preimage must hold.
bool is_subiso(const Structure& s, const PartialInjection& g);

// True iff for every target tuple contained in dom(g) the image tuple is
// again in the target.
bool preserves(const PartialInjection& g, const Target& t);

inline constexpr long long kNaiveBudget = 50'000'000;

// Decides whether the target is preserved by every subisomorphism of the
// structure whose domain has at most arity-many elements.  Only maps whose
// domain is the entry set of some target tuple are enumerated; that slice
// suffices.  With threads <= 1 the scan stops at the first failure and the
// witness is the first one in scan order (target tuples in input order,
// candidate maps in lexicographic image order).  With threads > 1 the same
// witness is returned but maps_inspected may be larger because workers do
// not stop early.
Verdict decide(const Structure& s, const Target& t, int threads = 1);

// Reference decider.  Enumerates every injective map between same-size
// subsets of the domain, from size 1 up to min(arity, |A|), and counts each
// one whether or not it is a subisomorphism.  Never stops early, so
// maps_inspected always equals sum over l of l! * C(|A|, l)^2.
// Throws BudgetError before enumerating if that sum exceeds budget.
Verdict decide_naive_slice(const Structure& s, const Target& t,
                           long long budget = kNaiveBudget);

}  // namespace opendef
