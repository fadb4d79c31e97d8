#pragma once

#include <string>
#include <utility>
#include <vector>

#include "opendef/formula.hpp"
#include "opendef/structure.hpp"

namespace opendef {

// Records how gadget elements relate to their construction-time labels so
// output files can show where each fresh element came from.
struct Provenance {
    std::string problem;
    int k = 0;
    std::vector<std::pair<std::string, int>> relabeling;  // label -> element
};

struct GadgetInstance {
    Structure structure;
    Target target;
    Provenance provenance;
};

// Adds a fresh k-vertex path on elements |G|..|G|+k-1 and asks for the
// relation holding that path in both traversal orders.  The result is not
// definable iff the input graph contains an induced path on k vertices.
// Fresh vertices carry labels -l..-1,1..l (even k) or -l..-1,0,1..l (odd k),
// most negative first.
// pre: g is a graph (one binary symbol, irreflexive, symmetric), k >= 2
GadgetInstance reduce_induced_path(const Structure& g, int k);

// Exhaustive check used as the reference answer for the reduction.  A single
// vertex counts as an induced path on one vertex.
// pre: g is a graph, k >= 1
bool brute_induced_path(const Structure& g, int k);

// Adds a fresh k-clique on elements |G|..|G|+k-1; the target lists all k!
// orderings of the clique (lexicographic).  Not definable iff the input
// graph contains a k-clique.  The target parameter kappa is k * k!.
// pre: g is a graph, k >= 1
GadgetInstance reduce_clique(const Structure& g, int k);

// pre: g is a graph, k >= 1
bool brute_clique(const Structure& g, int k);

// Rewrites a definability question as model checking: the returned sentence
// is satisfiable over the returned structure iff the target is not
// open-definable.
// pre: target nonempty
std::pair<Structure, ExistSentence> reduce_to_mc(const Structure& s, const Target& t);

}  // namespace opendef
