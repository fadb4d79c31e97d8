#include "opendef/reductions.hpp"

#include <algorithm>
#include <stdexcept>

#include "opendef/synthesis.hpp"

namespace opendef {

namespace {

void require_graph(const Structure& g, const char* who) {
    if (!is_graph(g)) {
        throw std::invalid_argument(std::string(who) + ": input is not a graph");
    }
}

std::vector<char> adjacency(const Structure& g) {
    const int n = g.domain_size();
    std::vector<char> adj(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (const Tuple& e : g.tuples(0)) {
        adj[static_cast<std::size_t>(e[0]) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(e[1])] = 1;
    }
    return adj;
}

bool first_combination(std::vector<int>& c, int n, int k) {
    if (k > n) return false;
    c.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
    return true;
}

bool next_combination(std::vector<int>& c, int n) {
    int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
        c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
    return true;
}

}  // namespace

GadgetInstance reduce_induced_path(const Structure& g, int k) {
    require_graph(g, "induced path reduction");
    if (k < 2) {
        throw std::invalid_argument("induced path reduction: k must be at least 2");
    }
    const int n = g.domain_size();

    std::vector<Tuple> edges = g.tuples(0);
    for (int i = 0; i + 1 < k; ++i) {
        edges.push_back({n + i, n + i + 1});
        edges.push_back({n + i + 1, n + i});
    }
    Structure extended(n + k, g.vocab(), {std::move(edges)});

    Tuple forward(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) forward[static_cast<std::size_t>(i)] = n + i;
    Tuple backward(forward.rbegin(), forward.rend());
    Target target(k, {forward, backward});

    Provenance prov{"induced-path", k, {}};
    const int half = k / 2;
    std::vector<int> labels;
    for (int v = -half; v <= -1; ++v) labels.push_back(v);
    if (k % 2 == 1) labels.push_back(0);
    for (int v = 1; v <= half; ++v) labels.push_back(v);
    for (int i = 0; i < k; ++i) {
        prov.relabeling.emplace_back(std::to_string(labels[static_cast<std::size_t>(i)]), n + i);
    }
    return GadgetInstance{std::move(extended), std::move(target), std::move(prov)};
}

bool brute_induced_path(const Structure& g, int k) {
    require_graph(g, "induced path check");
    if (k < 1) throw std::invalid_argument("induced path check: k must be at least 1");
    const int n = g.domain_size();
    if (k > n) return false;
    if (k == 1) return true;

    const std::vector<char> adj = adjacency(g);
    auto adjacent = [&](int a, int b) {
        return adj[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(b)] != 0;
    };

    std::vector<int> subset;
    first_combination(subset, n, k);
    do {
        std::vector<int> perm = subset;
        do {
            bool ok = true;
            for (int i = 0; ok && i < k; ++i) {
                for (int j = i + 1; j < k; ++j) {
                    bool want = (j == i + 1);
                    if (adjacent(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) != want) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
    } while (next_combination(subset, n));
    return false;
}

GadgetInstance reduce_clique(const Structure& g, int k) {
    require_graph(g, "clique reduction");
    if (k < 1) throw std::invalid_argument("clique reduction: k must be at least 1");
    const int n = g.domain_size();

    std::vector<Tuple> edges = g.tuples(0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i != j) edges.push_back({n + i, n + j});
        }
    }
    Structure extended(n + k, g.vocab(), {std::move(edges)});

    std::vector<Tuple> orderings;
    Tuple base(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) base[static_cast<std::size_t>(i)] = n + i;
    Tuple perm = base;
    do {
        orderings.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    Target target(k, std::move(orderings));

    Provenance prov{"clique", k, {}};
    for (int i = 0; i < k; ++i) {
        prov.relabeling.emplace_back(std::to_string(i + 1), n + i);
    }
    return GadgetInstance{std::move(extended), std::move(target), std::move(prov)};
}

bool brute_clique(const Structure& g, int k) {
    require_graph(g, "clique check");
    if (k < 1) throw std::invalid_argument("clique check: k must be at least 1");
    const int n = g.domain_size();
    if (k > n) return false;
    if (k == 1) return true;

    const std::vector<char> adj = adjacency(g);
    std::vector<int> subset;
    first_combination(subset, n, k);
    do {
        bool ok = true;
        for (int i = 0; ok && i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                if (!adj[static_cast<std::size_t>(subset[static_cast<std::size_t>(i)]) * static_cast<std::size_t>(n) +
                         static_cast<std::size_t>(subset[static_cast<std::size_t>(j)])]) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return true;
    } while (next_combination(subset, n));
    return false;
}

std::pair<Structure, ExistSentence> reduce_to_mc(const Structure& s, const Target& t) {
    return {s, phi_instance(s, t)};
}

}  // namespace opendef
