#pragma once

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "opendef/formula.hpp"
#include "opendef/structure.hpp"

namespace testutil {

// Undirected graph: both directions of every listed edge.
inline opendef::Structure graph(int v, const std::vector<std::pair<int, int>>& edges) {
    std::vector<opendef::Tuple> tuples;
    tuples.reserve(edges.size() * 2);
    for (const auto& [a, b] : edges) {
        tuples.push_back({a, b});
        tuples.push_back({b, a});
    }
    return opendef::Structure(v, {opendef::RelSymbol{"E", 2}}, {std::move(tuples)});
}

inline opendef::Structure complete_graph(int v) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < v; ++i) {
        for (int j = i + 1; j < v; ++j) edges.emplace_back(i, j);
    }
    return graph(v, edges);
}

inline opendef::Structure path_graph(int v) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < v; ++i) edges.emplace_back(i, i + 1);
    return graph(v, edges);
}

inline opendef::Structure cycle_graph(int v) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < v; ++i) edges.emplace_back(i, (i + 1) % v);
    return graph(v, edges);
}

// Every undirected graph on v vertices, one per subset of vertex pairs.
inline std::vector<opendef::Structure> all_graphs(int v) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < v; ++i) {
        for (int j = i + 1; j < v; ++j) pairs.emplace_back(i, j);
    }
    std::vector<opendef::Structure> out;
    out.reserve(std::size_t{1} << pairs.size());
    for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t b = 0; b < pairs.size(); ++b) {
            if (mask & (std::size_t{1} << b)) edges.push_back(pairs[b]);
        }
        out.push_back(graph(v, edges));
    }
    return out;
}

// Reference value for the exhaustive decider's map counter:
// sum over l = 1..min(arity, domain) of l! * C(domain, l)^2.
inline unsigned long long naive_map_count(int domain, int arity) {
    auto fact = [](int x) {
        unsigned long long r = 1;
        for (int i = 2; i <= x; ++i) r *= static_cast<unsigned long long>(i);
        return r;
    };
    auto choose = [](int n, int k) {
        unsigned long long r = 1;
        for (int i = 0; i < k; ++i) {
            r = r * static_cast<unsigned long long>(n - i) / static_cast<unsigned long long>(i + 1);
        }
        return r;
    };
    unsigned long long total = 0;
    const int lmax = std::min(arity, domain);
    for (int l = 1; l <= lmax; ++l) total += fact(l) * choose(domain, l) * choose(domain, l);
    return total;
}

// All m-tuples over 0..domain-1 in lexicographic order.
inline std::vector<opendef::Tuple> all_tuples(int domain, int m) {
    std::vector<opendef::Tuple> out;
    opendef::Tuple t(static_cast<std::size_t>(m), 0);
    for (;;) {
        out.push_back(t);
        int p = m - 1;
        while (p >= 0 && t[static_cast<std::size_t>(p)] == domain - 1) {
            t[static_cast<std::size_t>(p)] = 0;
            --p;
        }
        if (p < 0) break;
        ++t[static_cast<std::size_t>(p)];
    }
    return out;
}

inline opendef::Structure random_structure(std::mt19937& rng, int max_dom, int max_syms,
                                           int max_arity) {
    std::uniform_int_distribution<int> dom_dist(1, max_dom);
    std::uniform_int_distribution<int> sym_dist(1, max_syms);
    std::uniform_int_distribution<int> ar_dist(1, max_arity);
    const int dom = dom_dist(rng);
    const int nsyms = sym_dist(rng);

    std::vector<opendef::RelSymbol> vocab;
    std::vector<std::vector<opendef::Tuple>> tuples;
    for (int s = 0; s < nsyms; ++s) {
        const int arity = ar_dist(rng);
        vocab.push_back(opendef::RelSymbol{"R" + std::to_string(s), arity});
        std::vector<opendef::Tuple> rel;
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        for (const opendef::Tuple& t : all_tuples(dom, arity)) {
            if (coin(rng) < 0.35) rel.push_back(t);
        }
        tuples.push_back(std::move(rel));
    }
    return opendef::Structure(dom, std::move(vocab), std::move(tuples));
}

inline opendef::Target random_target(std::mt19937& rng, const opendef::Structure& s,
                                     int max_arity, int max_tuples) {
    std::uniform_int_distribution<int> ar_dist(1, max_arity);
    const int m = ar_dist(rng);
    std::uniform_int_distribution<int> count_dist(0, max_tuples);
    const int want = count_dist(rng);
    std::uniform_int_distribution<int> elem(0, s.domain_size() - 1);
    std::vector<opendef::Tuple> picked;
    for (int i = 0; i < want; ++i) {
        opendef::Tuple t(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) t[static_cast<std::size_t>(j)] = elem(rng);
        picked.push_back(std::move(t));
    }
    return opendef::Target(m, std::move(picked));
}

inline opendef::Formula random_formula(std::mt19937& rng,
                                       const std::vector<opendef::RelSymbol>& vocab,
                                       int max_var, int depth) {
    std::uniform_int_distribution<int> var(1, max_var);
    std::uniform_int_distribution<int> shape(0, depth > 0 ? 4 : 1);
    switch (shape(rng)) {
        case 0: {
            if (!vocab.empty()) {
                std::uniform_int_distribution<int> pick(0, static_cast<int>(vocab.size()) - 1);
                const opendef::RelSymbol& sym = vocab[static_cast<std::size_t>(pick(rng))];
                std::vector<int> vars(static_cast<std::size_t>(sym.arity));
                for (int& x : vars) x = var(rng);
                return opendef::Formula::rel(sym.name, vars);
            }
            [[fallthrough]];
        }
        case 1:
            return opendef::Formula::eq(var(rng), var(rng));
        case 2:
            return opendef::Formula::negate(random_formula(rng, vocab, max_var, depth - 1));
        case 3: {
            std::vector<opendef::Formula> parts;
            std::uniform_int_distribution<int> width(2, 3);
            const int w = width(rng);
            for (int i = 0; i < w; ++i) {
                parts.push_back(random_formula(rng, vocab, max_var, depth - 1));
            }
            return opendef::Formula::conj(std::move(parts));
        }
        default: {
            std::vector<opendef::Formula> parts;
            std::uniform_int_distribution<int> width(2, 3);
            const int w = width(rng);
            for (int i = 0; i < w; ++i) {
                parts.push_back(random_formula(rng, vocab, max_var, depth - 1));
            }
            return opendef::Formula::disj(std::move(parts));
        }
    }
}

}  // namespace testutil
