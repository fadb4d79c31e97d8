#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "opendef/decide.hpp"
#include "opendef/errors.hpp"
#include "opendef/formula.hpp"
#include "opendef/structure.hpp"
#include "opendef/synthesis.hpp"
#include "testutil.hpp"

using namespace opendef;

namespace {

// Images of abar under every subisomorphism defined exactly on its entries,
// computed from first principles for comparison with delta_tuple.
std::vector<Tuple> subiso_images(const Structure& s, const Tuple& abar) {
    std::vector<int> dom(abar.begin(), abar.end());
    std::sort(dom.begin(), dom.end());
    dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
    const int l = static_cast<int>(dom.size());

    std::set<Tuple> images;
    for (const Tuple& vals : testutil::all_tuples(s.domain_size(), l)) {
        std::set<int> seen(vals.begin(), vals.end());
        if (static_cast<int>(seen.size()) != l) continue;  // not injective
        PartialInjection g;
        for (int k = 0; k < l; ++k) g.insert(dom[k], vals[k]);
        if (!is_subiso(s, g)) continue;
        Tuple img;
        img.reserve(abar.size());
        for (int e : abar) img.push_back(*g.image(e));
        images.insert(std::move(img));
    }
    return {images.begin(), images.end()};
}

}  // namespace

TEST_CASE("delta_block conjoins one literal per index tuple") {
    Structure k3 = testutil::complete_graph(3);
    CHECK(to_text(delta_block(k3, {0, 1}, 0)) ==
          "~E(x1,x1)&E(x1,x2)&E(x2,x1)&~E(x2,x2)");
    Structure p3 = testutil::path_graph(3);
    CHECK(to_text(delta_block(p3, {0, 2}, 0)) ==
          "~E(x1,x1)&~E(x1,x2)&~E(x2,x1)&~E(x2,x2)");

    CHECK_THROWS_WITH_AS(delta_block(k3, {}, 0), "delta block: empty tuple",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(delta_block(k3, {0, 5}, 0),
                         "delta block: element out of range: 5", std::invalid_argument);
    CHECK_THROWS_WITH_AS(delta_block(k3, {0, 1}, 1),
                         "delta block: symbol index out of range", std::invalid_argument);
}

TEST_CASE("delta_tuple appends the equality pattern") {
    Structure k3 = testutil::complete_graph(3);
    CHECK(to_text(delta_tuple(k3, {0, 1})) ==
          "(~E(x1,x1)&E(x1,x2)&E(x2,x1)&~E(x2,x2))&x1!=x2");
    CHECK(to_text(delta_tuple(k3, {1, 1})) ==
          "(~E(x1,x1)&~E(x1,x2)&~E(x2,x1)&~E(x2,x2))&x1=x2");
}

TEST_CASE("delta_tuple extension equals the subisomorphism orbit of the tuple") {
    Structure p3 = testutil::path_graph(3);
    CHECK(extension(p3, delta_tuple(p3, {0, 1}), 2) ==
          std::vector<Tuple>{{0, 1}, {1, 0}, {1, 2}, {2, 1}});

    std::mt19937 rng(13579);
    for (int trial = 0; trial < 100; ++trial) {
        Structure s = testutil::random_structure(rng, 4, 2, 2);
        std::uniform_int_distribution<int> ar(1, 3);
        std::uniform_int_distribution<int> elem(0, s.domain_size() - 1);
        const int m = ar(rng);
        Tuple abar(static_cast<std::size_t>(m));
        for (int& e : abar) e = elem(rng);
        CAPTURE(trial);
        CAPTURE(print_structure(s));
        CAPTURE(to_text(delta_tuple(s, abar)));
        CHECK(extension(s, delta_tuple(s, abar), m) == subiso_images(s, abar));
    }
}

TEST_CASE("delta_target disjoins per-tuple formulas in input order") {
    Structure k3 = testutil::complete_graph(3);
    CHECK(delta_target(k3, Target(2, {})) == Formula::bottom());
    CHECK(delta_target(k3, Target(2, {{0, 1}})) == delta_tuple(k3, {0, 1}));

    Target two(2, {{1, 1}, {0, 1}});
    CHECK(to_text(delta_target(k3, two)) ==
          to_text(delta_tuple(k3, {1, 1})) + "|" + to_text(delta_tuple(k3, {0, 1})));
}

TEST_CASE("delta bundle carries the pieces and the satisfiability sentence") {
    Structure k3 = testutil::complete_graph(3);
    Target t(2, {{0, 1}, {1, 1}});
    DeltaBundle b = make_delta_bundle(k3, t);
    REQUIRE(b.per_tuple.size() == 2);
    CHECK(b.per_tuple[0].first == Tuple{0, 1});
    CHECK(b.per_tuple[0].second == delta_tuple(k3, {0, 1}));
    CHECK(b.per_tuple[1].first == Tuple{1, 1});
    CHECK(b.target == delta_target(k3, t));
    CHECK(b.sentence == phi_instance(k3, t));

    CHECK_THROWS_WITH_AS(make_delta_bundle(k3, Target(2, {})),
                         "delta bundle: target is empty", std::invalid_argument);
}

TEST_CASE("phi_instance is satisfiable exactly on undefinable targets") {
    Structure k3 = testutil::complete_graph(3);
    ExistSentence phi = phi_instance(k3, Target(2, {{0, 1}}));
    CHECK(phi.var_count == 4);
    McResult r = mc_exists(k3, phi);
    REQUIRE(r.sat);
    // block one is the target edge, block two its image outside the target
    CHECK(*r.witness == Assignment{0, 1, 0, 2});

    Structure p3 = testutil::path_graph(3);
    Target edges(2, {{0, 1}, {1, 0}, {1, 2}, {2, 1}});
    CHECK_FALSE(mc_exists(p3, phi_instance(p3, edges)).sat);

    CHECK_THROWS_WITH_AS(phi_instance(k3, Target(2, {})), "phi instance: target is empty",
                         std::invalid_argument);

    std::mt19937 rng(86420);
    int sat_count = 0;
    for (int trial = 0; trial < 80; ++trial) {
        Structure s = testutil::random_structure(rng, 3, 2, 2);
        Target t = testutil::random_target(rng, s, 2, 2);
        if (t.tuples().empty()) continue;
        CAPTURE(trial);
        CAPTURE(print_instance(s, t));
        bool sat = mc_exists(s, phi_instance(s, t)).sat;
        CHECK(sat == !decide(s, t).definable);
        sat_count += sat ? 1 : 0;
    }
    CHECK(sat_count > 10);
}

TEST_CASE("synthesize returns a verified formula or a witness") {
    Structure p3 = testutil::path_graph(3);
    Target edges(2, {{0, 1}, {1, 0}, {1, 2}, {2, 1}});
    SynthesisResult ok = synthesize(p3, edges);
    REQUIRE(ok.formula.has_value());
    CHECK_FALSE(ok.witness.has_value());
    CHECK(*ok.formula == delta_target(p3, edges));
    CHECK(extension(p3, *ok.formula, 2) == edges.sorted_tuples());

    Structure k3 = testutil::complete_graph(3);
    SynthesisResult bad = synthesize(k3, Target(2, {{0, 1}}));
    CHECK_FALSE(bad.formula.has_value());
    REQUIRE(bad.witness.has_value());
    CHECK(to_text(*bad.witness) == "witness: 0 1 -> 0 2 ; map: 0>0, 1>2");
}

TEST_CASE("synthesize verification budget propagates") {
    // 6^9 assignments exceed the default extension budget
    Structure k6 = testutil::complete_graph(6);
    std::vector<Tuple> diag;
    for (int e = 0; e < 6; ++e) diag.push_back(Tuple(9, e));
    Target t(9, diag);
    CHECK_THROWS_AS(synthesize(k6, t, true), BudgetError);
    SynthesisResult unchecked = synthesize(k6, t, false);
    CHECK(unchecked.formula.has_value());
}

TEST_CASE("atom_diff lists exactly the distinguishing atoms") {
    Structure p3 = testutil::path_graph(3);

    AtomDiff same = atom_diff(p3, {0, 1}, {1, 2});
    CHECK(same.rel_diffs.empty());
    CHECK(same.eq_diffs.empty());

    AtomDiff edge_vs_gap = atom_diff(p3, {0, 1}, {0, 2});
    REQUIRE(edge_vs_gap.rel_diffs.size() == 2);
    CHECK(edge_vs_gap.rel_diffs[0] == Formula::rel("E", {1, 2}));
    CHECK(edge_vs_gap.rel_diffs[1] == Formula::rel("E", {2, 1}));
    CHECK(edge_vs_gap.eq_diffs.empty());

    AtomDiff eq_pattern = atom_diff(p3, {1, 1}, {1, 2});
    REQUIRE(eq_pattern.rel_diffs.size() == 2);
    REQUIRE(eq_pattern.eq_diffs.size() == 1);
    CHECK(eq_pattern.eq_diffs[0] == Formula::eq(1, 2));

    CHECK_THROWS_WITH_AS(atom_diff(p3, {0, 1}, {0}),
                         "atom diff: tuples have different lengths", std::invalid_argument);
    CHECK_THROWS_WITH_AS(atom_diff(p3, {0, 9}, {0, 1}),
                         "atom diff: element out of range: 9", std::invalid_argument);
}
