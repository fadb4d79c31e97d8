#include "opendef/synthesis.hpp"

#include <stdexcept>

namespace opendef {

namespace {

void check_entries(const Structure& s, const Tuple& abar, const char* who) {
    if (abar.empty()) throw std::invalid_argument(std::string(who) + ": empty tuple");
    for (int e : abar) {
        if (e < 0 || e >= s.domain_size()) {
            throw std::invalid_argument(std::string(who) + ": element out of range: " +
                                        std::to_string(e));
        }
    }
}

// Advances an index tuple over {1..m}^r in lexicographic order.
bool next_index(std::vector<int>& idx, int m) {
    int j = static_cast<int>(idx.size()) - 1;
    while (j >= 0 && idx[static_cast<std::size_t>(j)] == m) {
        idx[static_cast<std::size_t>(j)] = 1;
        --j;
    }
    if (j < 0) return false;
    ++idx[static_cast<std::size_t>(j)];
    return true;
}

}  // namespace

Formula delta_block(const Structure& s, const Tuple& abar, int sym) {
    check_entries(s, abar, "delta block");
    if (sym < 0 || sym >= static_cast<int>(s.vocab().size())) {
        throw std::invalid_argument("delta block: symbol index out of range");
    }
    const int m = static_cast<int>(abar.size());
    const int r = s.vocab()[static_cast<std::size_t>(sym)].arity;
    const std::string& name = s.vocab()[static_cast<std::size_t>(sym)].name;

    std::vector<Formula> lits;
    std::vector<int> idx(static_cast<std::size_t>(r), 1);
    Tuple val(static_cast<std::size_t>(r));
    do {
        for (int j = 0; j < r; ++j) {
            val[static_cast<std::size_t>(j)] = abar[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)] - 1)];
        }
        Formula atom = Formula::rel(name, idx);
        lits.push_back(s.holds(sym, val) ? std::move(atom) : Formula::negate(std::move(atom)));
    } while (next_index(idx, m));
    return Formula::conj(std::move(lits));
}

Formula delta_tuple(const Structure& s, const Tuple& abar) {
    check_entries(s, abar, "delta tuple");
    const int m = static_cast<int>(abar.size());
    std::vector<Formula> parts;
    for (std::size_t sym = 0; sym < s.vocab().size(); ++sym) {
        parts.push_back(delta_block(s, abar, static_cast<int>(sym)));
    }
    for (int i = 1; i <= m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
            Formula e = Formula::eq(i, j);
            bool same = abar[static_cast<std::size_t>(i - 1)] == abar[static_cast<std::size_t>(j - 1)];
            parts.push_back(same ? std::move(e) : Formula::negate(std::move(e)));
        }
    }
    return Formula::conj(std::move(parts));
}

Formula delta_target(const Structure& s, const Target& t) {
    std::vector<Formula> parts;
    parts.reserve(t.tuples().size());
    for (const Tuple& abar : t.tuples()) parts.push_back(delta_tuple(s, abar));
    return Formula::disj(std::move(parts));
}

DeltaBundle make_delta_bundle(const Structure& s, const Target& t) {
    validate_instance(s, t);
    if (t.tuples().empty()) {
        throw std::invalid_argument("delta bundle: target is empty");
    }
    DeltaBundle bundle{{}, delta_target(s, t), phi_instance(s, t)};
    bundle.per_tuple.reserve(t.tuples().size());
    for (const Tuple& abar : t.tuples()) {
        bundle.per_tuple.emplace_back(abar, delta_tuple(s, abar));
    }
    return bundle;
}

ExistSentence phi_instance(const Structure& s, const Target& t) {
    validate_instance(s, t);
    if (t.tuples().empty()) {
        throw std::invalid_argument("phi instance: target is empty");
    }
    const int m = t.arity();
    const int blocks = static_cast<int>(t.tuples().size()) + 1;
    const Formula dt = delta_target(s, t);

    std::vector<Formula> parts;
    for (int i = 1; i <= blocks; ++i) {
        for (int j = i + 1; j <= blocks; ++j) {
            std::vector<Formula> diffs;
            diffs.reserve(static_cast<std::size_t>(m));
            for (int c = 1; c <= m; ++c) {
                diffs.push_back(Formula::negate(Formula::eq((i - 1) * m + c, (j - 1) * m + c)));
            }
            parts.push_back(Formula::disj(std::move(diffs)));
        }
    }
    for (int i = 1; i <= blocks; ++i) {
        parts.push_back(rename_vars(dt, (i - 1) * m));
    }
    return ExistSentence{blocks * m, Formula::conj(std::move(parts))};
}

SynthesisResult synthesize(const Structure& s, const Target& t, bool verify, long long budget) {
    validate_instance(s, t);
    Verdict v = decide(s, t, 1);
    if (!v.definable) return SynthesisResult{std::nullopt, std::move(v.witness)};

    Formula f = delta_target(s, t);
    if (verify) {
        std::vector<Tuple> ext = extension(s, f, t.arity(), budget);
        if (ext != t.sorted_tuples()) {
            throw std::logic_error("synthesize: formula extension does not match the target");
        }
    }
    return SynthesisResult{std::move(f), std::nullopt};
}

AtomDiff atom_diff(const Structure& s, const Tuple& a, const Tuple& b) {
    check_entries(s, a, "atom diff");
    check_entries(s, b, "atom diff");
    if (a.size() != b.size()) {
        throw std::invalid_argument("atom diff: tuples have different lengths");
    }
    const int m = static_cast<int>(a.size());

    AtomDiff diff;
    for (std::size_t sym = 0; sym < s.vocab().size(); ++sym) {
        const int r = s.vocab()[sym].arity;
        const std::string& name = s.vocab()[sym].name;
        std::vector<int> idx(static_cast<std::size_t>(r), 1);
        Tuple va(static_cast<std::size_t>(r));
        Tuple vb(static_cast<std::size_t>(r));
        do {
            for (int j = 0; j < r; ++j) {
                int pick = idx[static_cast<std::size_t>(j)] - 1;
                va[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(pick)];
                vb[static_cast<std::size_t>(j)] = b[static_cast<std::size_t>(pick)];
            }
            if (s.holds(static_cast<int>(sym), va) != s.holds(static_cast<int>(sym), vb)) {
                diff.rel_diffs.push_back(Formula::rel(name, idx));
            }
        } while (next_index(idx, m));
    }
    for (int i = 1; i <= m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
            bool ea = a[static_cast<std::size_t>(i - 1)] == a[static_cast<std::size_t>(j - 1)];
            bool eb = b[static_cast<std::size_t>(i - 1)] == b[static_cast<std::size_t>(j - 1)];
            if (ea != eb) diff.eq_diffs.push_back(Formula::eq(i, j));
        }
    }
    return diff;
}

}  // namespace opendef
