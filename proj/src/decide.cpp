#include "opendef/decide.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "opendef/errors.hpp"

namespace opendef {

PartialInjection::PartialInjection(const std::vector<std::pair<int, int>>& pairs) {
    for (const auto& [k, v] : pairs) {
        if (!insert(k, v)) {
            throw std::invalid_argument("partial injection: conflicting pair");
        }
    }
}

bool PartialInjection::insert(int key, int value) {
    auto f = fwd_.find(key);
    if (f != fwd_.end()) return f->second == value;
    auto i = inv_.find(value);
    if (i != inv_.end()) return false;
    fwd_.emplace(key, value);
    inv_.emplace(value, key);
    return true;
}

std::optional<int> PartialInjection::image(int key) const {
    auto it = fwd_.find(key);
    if (it == fwd_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> PartialInjection::preimage(int value) const {
    auto it = inv_.find(value);
    if (it == inv_.end()) return std::nullopt;
    return it->second;
}

namespace {

void append_tuple(std::string& out, const Tuple& t) {
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0) out += ' ';
        out += std::to_string(t[i]);
    }
}

}  // namespace

std::string to_text(const Witness& w) {
    std::string out = "witness: ";
    append_tuple(out, w.source);
    out += " -> ";
    append_tuple(out, w.image);
    out += " ; map: ";
    bool first = true;
    for (const auto& [k, v] : w.map.pairs()) {
        if (!first) out += ", ";
        first = false;
        out += std::to_string(k);
        out += '>';
        out += std::to_string(v);
    }
    return out;
}

bool is_subiso(const Structure& s, const PartialInjection& g) {
    for (std::size_t sym = 0; sym < s.vocab().size(); ++sym) {
        for (const Tuple& tt : s.tuples(static_cast<int>(sym))) {
            Tuple mapped(tt.size());
            bool inside = true;
            for (std::size_t j = 0; j < tt.size(); ++j) {
                auto im = g.image(tt[j]);
                if (!im) { inside = false; break; }
                mapped[j] = *im;
            }
            if (inside && !s.holds(static_cast<int>(sym), mapped)) return false;

            bool covered = true;
            for (std::size_t j = 0; j < tt.size(); ++j) {
                auto pre = g.preimage(tt[j]);
                if (!pre) { covered = false; break; }
                mapped[j] = *pre;
            }
            if (covered && !s.holds(static_cast<int>(sym), mapped)) return false;
        }
    }
    return true;
}

bool preserves(const PartialInjection& g, const Target& t) {
    Tuple img(static_cast<std::size_t>(t.arity()));
    for (const Tuple& abar : t.tuples()) {
        bool inside = true;
        for (std::size_t j = 0; j < abar.size(); ++j) {
            auto im = g.image(abar[j]);
            if (!im) { inside = false; break; }
            img[j] = *im;
        }
        if (inside && !t.contains(img)) return false;
    }
    return true;
}

namespace {

Tuple sorted_entries(const Tuple& abar) {
    Tuple dom = abar;
    std::sort(dom.begin(), dom.end());
    dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
    return dom;
}

// DFS state for enumerating all subisomorphisms with the given domain, in
// lexicographic order of the image sequence.  pos maps element -> slot in
// dom, inv maps assigned image value -> slot.
struct SubisoSearch {
    const Structure& s;
    const Tuple& dom;
    std::vector<int> pos;
    std::vector<int> inv;
    std::vector<int> images;
    std::vector<char> used;
    std::vector<std::vector<int>> out;
    unsigned long long count = 0;

    SubisoSearch(const Structure& st, const Tuple& d)
        : s(st),
          dom(d),
          pos(static_cast<std::size_t>(st.domain_size()), -1),
          inv(static_cast<std::size_t>(st.domain_size()), -1),
          images(d.size(), -1),
          used(static_cast<std::size_t>(st.domain_size()), 0) {
        for (std::size_t i = 0; i < d.size(); ++i) pos[static_cast<std::size_t>(d[i])] = static_cast<int>(i);
    }

    // Checks only constraints completed by the newest pair dom[k] -> v.  A
    // tuple is tested exactly once, at the step where its last slot (or last
    // image value) becomes assigned, so leaves are exactly the
    // subisomorphisms.
    bool consistent(int k, int v) const {
        Tuple scratch;
        for (std::size_t sym = 0; sym < s.vocab().size(); ++sym) {
            for (const Tuple& tt : s.tuples(static_cast<int>(sym))) {
                bool applicable = true;
                bool touches_new = false;
                for (int e : tt) {
                    int p = pos[static_cast<std::size_t>(e)];
                    if (p < 0 || p > k) { applicable = false; break; }
                    if (p == k) touches_new = true;
                }
                if (applicable && touches_new) {
                    scratch.resize(tt.size());
                    for (std::size_t j = 0; j < tt.size(); ++j) {
                        scratch[j] = images[static_cast<std::size_t>(pos[static_cast<std::size_t>(tt[j])])];
                    }
                    if (!s.holds(static_cast<int>(sym), scratch)) return false;
                }

                bool in_range = true;
                touches_new = false;
                for (int e : tt) {
                    if (inv[static_cast<std::size_t>(e)] < 0) { in_range = false; break; }
                    if (e == v) touches_new = true;
                }
                if (in_range && touches_new) {
                    scratch.resize(tt.size());
                    for (std::size_t j = 0; j < tt.size(); ++j) {
                        scratch[j] = dom[static_cast<std::size_t>(inv[static_cast<std::size_t>(tt[j])])];
                    }
                    if (!s.holds(static_cast<int>(sym), scratch)) return false;
                }
            }
        }
        return true;
    }

    void run(std::size_t k) {
        if (k == dom.size()) {
            out.push_back(images);
            ++count;
            return;
        }
        for (int v = 0; v < s.domain_size(); ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            images[k] = v;
            used[static_cast<std::size_t>(v)] = 1;
            inv[static_cast<std::size_t>(v)] = static_cast<int>(k);
            if (consistent(static_cast<int>(k), v)) run(k + 1);
            used[static_cast<std::size_t>(v)] = 0;
            inv[static_cast<std::size_t>(v)] = -1;
        }
    }
};

std::vector<std::vector<int>> enumerate_subisos(const Structure& s, const Tuple& dom,
                                                unsigned long long& counter) {
    SubisoSearch search(s, dom);
    search.run(0);
    counter += search.count;
    return std::move(search.out);
}

Witness make_witness(const Tuple& abar, const Tuple& img, const Tuple& dom,
                     const std::vector<int>& images) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) pairs.emplace_back(dom[i], images[i]);
    return Witness{abar, img, PartialInjection(pairs)};
}

Verdict decide_sequential(const Structure& s, const Target& t) {
    Verdict verdict;
    std::map<Tuple, std::vector<std::vector<int>>> memo;
    std::vector<int> pos(static_cast<std::size_t>(s.domain_size()), -1);
    for (const Tuple& abar : t.tuples()) {
        Tuple dom = sorted_entries(abar);
        auto it = memo.find(dom);
        if (it == memo.end()) {
            it = memo.emplace(dom, enumerate_subisos(s, dom, verdict.maps_inspected)).first;
        }
        std::fill(pos.begin(), pos.end(), -1);
        for (std::size_t i = 0; i < dom.size(); ++i) pos[static_cast<std::size_t>(dom[i])] = static_cast<int>(i);
        Tuple img(abar.size());
        for (const auto& images : it->second) {
            for (std::size_t j = 0; j < abar.size(); ++j) {
                img[j] = images[static_cast<std::size_t>(pos[static_cast<std::size_t>(abar[j])])];
            }
            if (!t.contains(img)) {
                verdict.definable = false;
                verdict.witness = make_witness(abar, img, dom, images);
                return verdict;
            }
        }
    }
    return verdict;
}

struct DomJob {
    Tuple dom;
    std::vector<std::size_t> tuple_indices;  // ascending
};

struct JobHit {
    std::size_t tuple_index;
    Tuple img;
    std::vector<int> images;
};

Verdict decide_parallel(const Structure& s, const Target& t, int threads) {
    std::vector<DomJob> jobs;
    std::map<Tuple, std::size_t> job_of;
    for (std::size_t ti = 0; ti < t.tuples().size(); ++ti) {
        Tuple dom = sorted_entries(t.tuples()[ti]);
        auto [it, inserted] = job_of.emplace(std::move(dom), jobs.size());
        if (inserted) jobs.push_back(DomJob{it->first, {}});
        jobs[it->second].tuple_indices.push_back(ti);
    }

    std::vector<unsigned long long> counts(jobs.size(), 0);
    std::vector<std::optional<JobHit>> hits(jobs.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        std::vector<int> pos(static_cast<std::size_t>(s.domain_size()), -1);
        for (;;) {
            std::size_t j = next.fetch_add(1);
            if (j >= jobs.size()) return;
            const DomJob& job = jobs[j];
            auto subisos = enumerate_subisos(s, job.dom, counts[j]);
            std::fill(pos.begin(), pos.end(), -1);
            for (std::size_t i = 0; i < job.dom.size(); ++i) {
                pos[static_cast<std::size_t>(job.dom[i])] = static_cast<int>(i);
            }
            for (std::size_t ti : job.tuple_indices) {
                const Tuple& abar = t.tuples()[ti];
                Tuple img(abar.size());
                bool found = false;
                for (const auto& images : subisos) {
                    for (std::size_t jj = 0; jj < abar.size(); ++jj) {
                        img[jj] = images[static_cast<std::size_t>(pos[static_cast<std::size_t>(abar[jj])])];
                    }
                    if (!t.contains(img)) {
                        hits[j] = JobHit{ti, img, images};
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
        }
    };

    std::size_t worker_count = std::min<std::size_t>(static_cast<std::size_t>(threads), jobs.size());
    if (worker_count == 0) worker_count = 1;
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (std::size_t i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    Verdict verdict;
    for (unsigned long long c : counts) verdict.maps_inspected += c;
    const JobHit* best = nullptr;
    const DomJob* best_job = nullptr;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (hits[j] && (!best || hits[j]->tuple_index < best->tuple_index)) {
            best = &*hits[j];
            best_job = &jobs[j];
        }
    }
    if (best) {
        verdict.definable = false;
        verdict.witness = make_witness(t.tuples()[best->tuple_index], best->img,
                                       best_job->dom, best->images);
    }
    return verdict;
}

}  // namespace

Verdict decide(const Structure& s, const Target& t, int threads) {
    validate_instance(s, t);
    if (threads <= 1) return decide_sequential(s, t);
    return decide_parallel(s, t, threads);
}

Verdict decide_naive_slice(const Structure& s, const Target& t, long long budget) {
    validate_instance(s, t);
    const int n = s.domain_size();
    const int lmax = std::min(t.arity(), n);

    long double estimate = 0.0L;
    {
        long double fact = 1.0L;
        for (int l = 1; l <= lmax; ++l) {
            fact *= static_cast<long double>(l);
            long double choose = 1.0L;
            for (int i = 0; i < l; ++i) {
                choose *= static_cast<long double>(n - i) / static_cast<long double>(i + 1);
            }
            estimate += fact * choose * choose;
        }
    }
    if (estimate > static_cast<long double>(budget)) {
        throw BudgetError("naive slice: map count exceeds budget of " + std::to_string(budget));
    }

    Verdict verdict;
    std::vector<int> pos(static_cast<std::size_t>(n), -1);

    std::vector<int> B(static_cast<std::size_t>(lmax));
    std::vector<int> Bp(static_cast<std::size_t>(lmax));
    auto first_combination = [](std::vector<int>& c, int l) {
        c.resize(static_cast<std::size_t>(l));
        for (int i = 0; i < l; ++i) c[static_cast<std::size_t>(i)] = i;
    };
    auto next_combination = [n](std::vector<int>& c) {
        int l = static_cast<int>(c.size());
        int i = l - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - l + i) --i;
        if (i < 0) return false;
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < l; ++j) {
            c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
        }
        return true;
    };

    for (int l = 1; l <= lmax; ++l) {
        first_combination(B, l);
        do {
            first_combination(Bp, l);
            do {
                std::vector<int> perm = Bp;
                do {
                    ++verdict.maps_inspected;
                    std::vector<std::pair<int, int>> pairs;
                    pairs.reserve(static_cast<std::size_t>(l));
                    for (int i = 0; i < l; ++i) {
                        pairs.emplace_back(B[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i)]);
                    }
                    PartialInjection g(pairs);
                    if (verdict.definable && is_subiso(s, g) && !preserves(g, t)) {
                        std::fill(pos.begin(), pos.end(), -1);
                        for (int i = 0; i < l; ++i) {
                            pos[static_cast<std::size_t>(B[static_cast<std::size_t>(i)])] = i;
                        }
                        for (const Tuple& abar : t.tuples()) {
                            bool inside = true;
                            Tuple img(abar.size());
                            for (std::size_t j = 0; j < abar.size(); ++j) {
                                int p = pos[static_cast<std::size_t>(abar[j])];
                                if (p < 0) { inside = false; break; }
                                img[j] = perm[static_cast<std::size_t>(p)];
                            }
                            if (inside && !t.contains(img)) {
                                verdict.definable = false;
                                verdict.witness = Witness{abar, img, g};
                                break;
                            }
                        }
                    }
                } while (std::next_permutation(perm.begin(), perm.end()));
            } while (next_combination(Bp));
        } while (next_combination(B));
    }
    return verdict;
}

}  // namespace opendef
