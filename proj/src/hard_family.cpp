#include "opendef/hard_family.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "opendef/decide.hpp"
#include "opendef/errors.hpp"
#include "opendef/synthesis.hpp"

namespace opendef {

namespace {

constexpr long long kSat = std::numeric_limits<long long>::max();

long long sat_mul(long long a, long long b) {
    if (a <= 0 || b <= 0) return 0;
    if (a > kSat / b) return kSat;
    return a * b;
}

long long sat_add(long long a, long long b) {
    if (a > kSat - b) return kSat;
    return a + b;
}

long long sat_pow(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r = sat_mul(r, base);
    return r;
}

void require_n(int n) {
    if (n < 3) throw std::invalid_argument("hard family: n must be at least 3");
}

void require_jbar(int n, const std::vector<int>& jbar) {
    if (static_cast<int>(jbar.size()) != n) {
        throw std::invalid_argument("hard family: jbar must have n entries");
    }
    for (int j : jbar) {
        if (j < 2 || j > n) {
            throw std::invalid_argument("hard family: jbar entries must lie in 2..n");
        }
    }
}

// Row i (0-based) of M_j (j is 1-based).
Tuple matrix_row(int n, int j, int i) {
    Tuple row(static_cast<std::size_t>(n));
    if (j == 1) {
        row[0] = i;
        for (int c = 1; c < n; ++c) row[static_cast<std::size_t>(c)] = 3 * n;
    } else {
        for (int c = 0; c < n; ++c) row[static_cast<std::size_t>(c)] = 3 * n + (j - 1);
        row[0] = n + i;
        row[static_cast<std::size_t>(j - 1)] = 2 * n + i;
    }
    return row;
}

// All jbar in {2..n}^n, lexicographically.
std::vector<std::vector<int>> all_jbars(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> jb(static_cast<std::size_t>(n), 2);
    for (;;) {
        out.push_back(jb);
        int p = n - 1;
        while (p >= 0 && jb[static_cast<std::size_t>(p)] == n) {
            jb[static_cast<std::size_t>(p)] = 2;
            --p;
        }
        if (p < 0) break;
        ++jb[static_cast<std::size_t>(p)];
    }
    return out;
}

}  // namespace

HardInstance gen_hard(int n) {
    require_n(n);
    std::vector<Tuple> rows;
    rows.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) + 3);
    Tuple a(static_cast<std::size_t>(n));
    Tuple b(static_cast<std::size_t>(n));
    Tuple c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        a[static_cast<std::size_t>(i)] = i;
        b[static_cast<std::size_t>(i)] = n + i;
        c[static_cast<std::size_t>(i)] = 2 * n + i;
    }
    rows.push_back(std::move(a));
    rows.push_back(std::move(b));
    rows.push_back(std::move(c));
    for (int j = 1; j <= n; ++j) {
        for (int i = 0; i < n; ++i) rows.push_back(matrix_row(n, j, i));
    }
    Structure st(4 * n, {RelSymbol{"R", n}}, {std::move(rows)});
    Target t(n * n, {base_matrix(n)});
    return HardInstance{n, std::move(st), std::move(t)};
}

Tuple base_matrix(int n) {
    require_n(n);
    Tuple flat;
    flat.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Tuple row = matrix_row(n, 1, i);
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return flat;
}

Tuple mixed_matrix(int n, const std::vector<int>& jbar) {
    require_n(n);
    require_jbar(n, jbar);
    Tuple flat;
    flat.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Tuple row = matrix_row(n, jbar[static_cast<std::size_t>(i)], i);
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return flat;
}

Formula alpha(int n, AlphaVariant variant) {
    require_n(n);
    std::vector<Formula> lits;
    if (variant == AlphaVariant::rows) {
        std::vector<int> col1(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) col1[static_cast<std::size_t>(i)] = i * n + 1;
        lits.push_back(Formula::rel("R", col1));
        for (int i = 0; i < n; ++i) {
            std::vector<int> row(static_cast<std::size_t>(n));
            for (int c = 1; c <= n; ++c) row[static_cast<std::size_t>(c - 1)] = i * n + c;
            lits.push_back(Formula::rel("R", row));
        }
    } else {
        for (int c = 1; c <= n; ++c) {
            std::vector<int> col(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = i * n + c;
            lits.push_back(Formula::rel("R", col));
        }
    }
    return Formula::conj(std::move(lits));
}

Formula lambda_atom(int n, const std::vector<int>& jbar) {
    require_n(n);
    require_jbar(n, jbar);
    std::vector<int> vars(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        vars[static_cast<std::size_t>(i)] = i * n + jbar[static_cast<std::size_t>(i)];
    }
    return Formula::rel("R", vars);
}

Formula beta(int n, long long budget) {
    require_n(n);
    long long count = sat_pow(n - 1, n);
    if (sat_mul(count, n) > budget) {
        throw BudgetError("beta: literal count exceeds budget of " + std::to_string(budget));
    }
    std::vector<Formula> lits;
    lits.reserve(static_cast<std::size_t>(count));
    for (const auto& jb : all_jbars(n)) {
        lits.push_back(Formula::negate(lambda_atom(n, jb)));
    }
    return Formula::conj(std::move(lits));
}

std::vector<Tuple> alpha_satisfiers(const HardInstance& inst, AlphaVariant variant,
                                    long long budget) {
    const int n = inst.n;
    require_n(n);
    const long long m = static_cast<long long>(n) * n;
    const std::vector<Tuple>& R = inst.structure.tuples(0);

    std::vector<Tuple> out;
    if (variant == AlphaVariant::rows) {
        long long total = 0;
        for (const Tuple& col1 : R) {
            long long combos = 1;
            for (int i = 0; i < n && combos > 0; ++i) {
                long long c = 0;
                for (const Tuple& r : R) {
                    if (r[0] == col1[static_cast<std::size_t>(i)]) ++c;
                }
                combos = sat_mul(combos, c);
            }
            total = sat_add(total, combos);
        }
        if (sat_mul(total, m) > budget) {
            throw BudgetError("alpha satisfiers: enumeration exceeds budget of " +
                              std::to_string(budget));
        }

        for (const Tuple& col1 : R) {
            std::vector<std::vector<const Tuple*>> cand(static_cast<std::size_t>(n));
            bool feasible = true;
            for (int i = 0; i < n; ++i) {
                for (const Tuple& r : R) {
                    if (r[0] == col1[static_cast<std::size_t>(i)]) {
                        cand[static_cast<std::size_t>(i)].push_back(&r);
                    }
                }
                if (cand[static_cast<std::size_t>(i)].empty()) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;

            std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
            for (;;) {
                Tuple flat;
                flat.reserve(static_cast<std::size_t>(m));
                for (int i = 0; i < n; ++i) {
                    const Tuple& r = *cand[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]];
                    flat.insert(flat.end(), r.begin(), r.end());
                }
                out.push_back(std::move(flat));
                int p = n - 1;
                while (p >= 0 &&
                       pick[static_cast<std::size_t>(p)] + 1 == cand[static_cast<std::size_t>(p)].size()) {
                    pick[static_cast<std::size_t>(p)] = 0;
                    --p;
                }
                if (p < 0) break;
                ++pick[static_cast<std::size_t>(p)];
            }
        }
    } else {
        long long combos = sat_pow(static_cast<long long>(R.size()), n);
        if (sat_mul(combos, m) > budget) {
            throw BudgetError("alpha satisfiers: enumeration exceeds budget of " +
                              std::to_string(budget));
        }
        std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
        for (;;) {
            Tuple flat(static_cast<std::size_t>(m));
            for (int c = 0; c < n; ++c) {
                const Tuple& col = R[pick[static_cast<std::size_t>(c)]];
                for (int i = 0; i < n; ++i) {
                    flat[static_cast<std::size_t>(i * n + c)] = col[static_cast<std::size_t>(i)];
                }
            }
            out.push_back(std::move(flat));
            int p = n - 1;
            while (p >= 0 && pick[static_cast<std::size_t>(p)] + 1 == R.size()) {
                pick[static_cast<std::size_t>(p)] = 0;
                --p;
            }
            if (p < 0) break;
            ++pick[static_cast<std::size_t>(p)];
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

FamilyReport verify_family(int n, AlphaVariant variant, long long budget) {
    require_n(n);
    HardInstance inst = gen_hard(n);
    const Structure& st = inst.structure;

    FamilyReport rep;
    rep.n = n;
    rep.variant = variant;
    rep.domain_size = st.domain_size();
    rep.relation_tuples = static_cast<long long>(st.tuples(0).size());
    rep.target_arity = inst.target.arity();
    rep.kappa = param_kappa(inst.target);

    const Formula al = alpha(n, variant);
    rep.alpha_literals = literal_count(al);
    const Formula be = beta(n, budget);
    rep.beta_literals = literal_count(be);

    const Tuple base = base_matrix(n);
    const std::vector<std::vector<int>> jbars = all_jbars(n);
    std::vector<Tuple> mixed;
    mixed.reserve(jbars.size());
    std::set<Tuple> family{base};
    for (const auto& jb : jbars) {
        mixed.push_back(mixed_matrix(n, jb));
        family.insert(mixed.back());
    }
    rep.family_size = static_cast<long long>(family.size());

    rep.satisfiers = alpha_satisfiers(inst, variant, budget);
    for (const Tuple& s : rep.satisfiers) {
        if (family.find(s) == family.end()) ++rep.beyond_family;
    }

    // Remaining passes scan (n-1)^n mixed matrices against n^(2n) relation
    // atoms, so gate on that product before starting.
    const long long jb_count = static_cast<long long>(jbars.size());
    long long est = sat_mul(jb_count, sat_pow(static_cast<long long>(n) * n, n));
    est = sat_add(est, sat_mul(static_cast<long long>(rep.satisfiers.size()) + 2,
                               sat_mul(jb_count, n)));
    est = sat_add(est, sat_mul(jb_count, sat_mul(jb_count, n)));
    if (est > budget) {
        throw BudgetError("family check: scan size exceeds budget of " + std::to_string(budget));
    }

    rep.alpha_at_base = eval_open(st, al, base);
    rep.beta_at_base = eval_open(st, be, base);
    for (const Tuple& s : rep.satisfiers) {
        if (eval_open(st, be, s)) {
            rep.alpha_beta_satisfiers.push_back(s);
            if (s != base) rep.extra_survivors.push_back(s);
        }
    }
    rep.defines_target =
        rep.alpha_beta_satisfiers.size() == 1 && rep.alpha_beta_satisfiers.front() == base;

    rep.decide_definable = decide(st, inst.target, 1).definable;

    std::vector<Formula> lambdas;
    lambdas.reserve(jbars.size());
    for (const auto& jb : jbars) lambdas.push_back(lambda_atom(n, jb));

    rep.drop_one_admits = true;
    for (std::size_t t = 0; t < jbars.size() && rep.drop_one_admits; ++t) {
        if (!eval_open(st, al, mixed[t]) || !eval_open(st, lambdas[t], mixed[t])) {
            rep.drop_one_admits = false;
            break;
        }
        for (std::size_t k = 0; k < jbars.size(); ++k) {
            if (k != t && eval_open(st, lambdas[k], mixed[t])) {
                rep.drop_one_admits = false;
                break;
            }
        }
    }

    rep.unique_forward = true;
    rep.unique_symmetric = true;
    rep.eq_diff_min = kSat;
    for (std::size_t t = 0; t < jbars.size(); ++t) {
        AtomDiff d = atom_diff(st, base, mixed[t]);
        std::size_t forward = 0;
        bool forward_is_lambda = false;
        for (const Formula& atom : d.rel_diffs) {
            if (eval_open(st, atom, mixed[t])) {
                ++forward;
                forward_is_lambda = atom == lambdas[t];
            }
        }
        if (forward != 1 || !forward_is_lambda) rep.unique_forward = false;
        if (d.rel_diffs.size() != 1 || d.rel_diffs.front() != lambdas[t]) {
            rep.unique_symmetric = false;
        }
        rep.symmetric_rel_diff_max =
            std::max(rep.symmetric_rel_diff_max, static_cast<long long>(d.rel_diffs.size()));
        const long long ec = static_cast<long long>(d.eq_diffs.size());
        rep.eq_diff_min = std::min(rep.eq_diff_min, ec);
        rep.eq_diff_max = std::max(rep.eq_diff_max, ec);
    }
    rep.eq_diff_nonempty = rep.eq_diff_min > 0;

    rep.probe_literals = rep.alpha_literals + n;
    for (const Tuple& s : rep.satisfiers) {
        bool pinned = true;
        for (int i = 0; i < n; ++i) {
            if (s[static_cast<std::size_t>(i * n + 1)] != s[static_cast<std::size_t>(i * n + 2)]) {
                pinned = false;
                break;
            }
        }
        if (pinned) rep.probe_satisfiers.push_back(s);
    }
    rep.probe_defines =
        rep.probe_satisfiers.size() == 1 && rep.probe_satisfiers.front() == base;
    return rep;
}

std::string to_text(const FamilyReport& rep) {
    auto verdict = [](bool b) { return b ? "pass" : "fail"; };
    std::string out;
    auto line = [&out](const std::string& key, const std::string& value) {
        out += key;
        out += ": ";
        out += value;
        out += '\n';
    };
    auto tuple_text = [](const Tuple& t) {
        std::string s;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i > 0) s += ' ';
            s += std::to_string(t[i]);
        }
        return s;
    };

    line("n", std::to_string(rep.n));
    line("alpha-variant", rep.variant == AlphaVariant::rows ? "rows" : "columns");
    line("domain-size", std::to_string(rep.domain_size));
    line("relation-tuples", std::to_string(rep.relation_tuples));
    line("target-arity", std::to_string(rep.target_arity));
    line("kappa", std::to_string(rep.kappa));
    line("alpha-literals", std::to_string(rep.alpha_literals));
    line("beta-literals", std::to_string(rep.beta_literals));
    line("matrix-family-size", std::to_string(rep.family_size));
    line("alpha-satisfiers", std::to_string(rep.satisfiers.size()));
    line("alpha-satisfiers-beyond-family", std::to_string(rep.beyond_family));
    line("check-alpha-at-base", verdict(rep.alpha_at_base));
    line("check-beta-at-base", verdict(rep.beta_at_base));
    line("check-alpha-beta-defines-target", verdict(rep.defines_target));
    line("alpha-beta-satisfiers", std::to_string(rep.alpha_beta_satisfiers.size()));
    for (const Tuple& s : rep.extra_survivors) {
        line("extra-alpha-beta-satisfier", tuple_text(s));
    }
    line("check-decide-definable", verdict(rep.decide_definable));
    line("check-drop-one-admits-matrix", verdict(rep.drop_one_admits));
    line("check-unique-forward-atom-diff", verdict(rep.unique_forward));
    line("check-unique-symmetric-atom-diff", verdict(rep.unique_symmetric));
    line("symmetric-rel-diff-max", std::to_string(rep.symmetric_rel_diff_max));
    line("eq-diff-min", std::to_string(rep.eq_diff_min));
    line("eq-diff-max", std::to_string(rep.eq_diff_max));
    line("check-eq-diff-nonempty", verdict(rep.eq_diff_nonempty));
    line("probe-literals", std::to_string(rep.probe_literals));
    line("probe-satisfiers", std::to_string(rep.probe_satisfiers.size()));
    line("check-probe-defines-target", verdict(rep.probe_defines));
    return out;
}

}  // namespace opendef
