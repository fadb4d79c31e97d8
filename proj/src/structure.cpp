#include "opendef/structure.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace opendef {

namespace {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// Names that would collide with the formula grammar are rejected up front:
// "exists" is the quantifier keyword and x<digits> is variable syntax.
bool is_reserved(const std::string& s) {
    if (s == "exists") return true;
    if (s.size() >= 2 && s[0] == 'x') {
        bool all_digits = true;
        for (std::size_t i = 1; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) all_digits = false;
        if (all_digits) return true;
    }
    return false;
}

void sort_dedup(std::vector<Tuple>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string join(const Tuple& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(t[i]);
    }
    return out;
}

} // namespace

Structure::Structure(int domain_size, std::vector<RelSymbol> vocab,
                     std::vector<std::vector<Tuple>> tuples)
    : domain_size_(domain_size), vocab_(std::move(vocab)), tuples_(std::move(tuples)) {
    if (domain_size_ < 1)
        throw std::invalid_argument("structure: domain size must be >= 1");
    if (vocab_.size() != tuples_.size())
        throw std::invalid_argument("structure: one tuple list per symbol required");
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
        const auto& sym = vocab_[i];
        if (!is_identifier(sym.name) || is_reserved(sym.name))
            throw std::invalid_argument("structure: bad relation name '" + sym.name + "'");
        if (sym.arity < 1)
            throw std::invalid_argument("structure: arity must be >= 1 for " + sym.name);
        for (std::size_t j = 0; j < i; ++j)
            if (vocab_[j].name == sym.name)
                throw std::invalid_argument("structure: duplicate symbol " + sym.name);
        for (const auto& t : tuples_[i]) {
            if (static_cast<int>(t.size()) != sym.arity)
                throw std::invalid_argument("structure: arity mismatch in " + sym.name);
            for (int e : t)
                if (e < 0 || e >= domain_size_)
                    throw std::invalid_argument("structure: element out of range in " + sym.name);
        }
        sort_dedup(tuples_[i]);
    }
}

int Structure::symbol_index(const std::string& name) const {
    for (std::size_t i = 0; i < vocab_.size(); ++i)
        if (vocab_[i].name == name) return static_cast<int>(i);
    return -1;
}

bool Structure::holds(int sym, const Tuple& t) const {
    const auto& v = tuples_.at(sym);
    return std::binary_search(v.begin(), v.end(), t);
}

Target::Target(int arity, std::vector<Tuple> tuples) : arity_(arity) {
    if (arity_ < 1)
        throw std::invalid_argument("target: arity must be >= 1");
    for (auto& t : tuples) {
        if (static_cast<int>(t.size()) != arity_)
            throw std::invalid_argument("target: tuple arity mismatch");
        if (!std::binary_search(sorted_.begin(), sorted_.end(), t)) {
            tuples_.push_back(t);
            sorted_.insert(std::lower_bound(sorted_.begin(), sorted_.end(), t), t);
        }
    }
}

bool Target::contains(const Tuple& t) const {
    return std::binary_search(sorted_.begin(), sorted_.end(), t);
}

void validate_instance(const Structure& s, const Target& t) {
    for (const auto& tup : t.tuples())
        for (int e : tup)
            if (e < 0 || e >= s.domain_size())
                throw std::invalid_argument("target: element out of range: " + std::to_string(e));
}

namespace {

struct LineParser {
    std::istringstream in;
    int lineno = 0;
    std::vector<std::string> tokens;

    explicit LineParser(const std::string& text) : in(text) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    }

    // next non-empty line split on whitespace, comments stripped
    bool next() {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            tokens.clear();
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    int number(const std::string& tok, const char* what) const {
        if (tok.empty() || tok.size() > 9) fail(std::string("bad ") + what + " '" + tok + "'");
        for (char c : tok)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                fail(std::string("bad ") + what + " '" + tok + "'");
        return std::stoi(tok);
    }
};

ParsedFile parse_file(const std::string& text, bool require_target) {
    LineParser p(text);
    std::vector<RelSymbol> vocab;
    std::vector<std::vector<Tuple>> rels;
    std::optional<int> domain;
    std::optional<int> target_arity;
    std::vector<Tuple> target_tuples;
    std::optional<std::string> sentence;

    while (p.next()) {
        const std::string& kw = p.tokens[0];
        if (kw == "vocab") {
            if (domain) p.fail("vocab line after domain");
            if (p.tokens.size() != 3) p.fail("expected: vocab NAME ARITY");
            RelSymbol sym{p.tokens[1], p.number(p.tokens[2], "arity")};
            if (!is_identifier(sym.name) || is_reserved(sym.name))
                p.fail("bad relation name '" + sym.name + "'");
            if (sym.arity < 1) p.fail("arity must be >= 1");
            for (const auto& other : vocab)
                if (other.name == sym.name) p.fail("duplicate symbol " + sym.name);
            vocab.push_back(sym);
            rels.emplace_back();
        } else if (kw == "domain") {
            if (domain) p.fail("duplicate domain line");
            if (p.tokens.size() != 2) p.fail("expected: domain N");
            domain = p.number(p.tokens[1], "domain size");
            if (*domain < 1) p.fail("domain size must be >= 1");
        } else if (kw == "rel") {
            if (!domain) p.fail("rel before domain");
            if (target_arity) p.fail("rel after target");
            if (p.tokens.size() < 2) p.fail("expected: rel NAME e1 ...");
            int sym = -1;
            for (std::size_t i = 0; i < vocab.size(); ++i)
                if (vocab[i].name == p.tokens[1]) sym = static_cast<int>(i);
            if (sym < 0) p.fail("unknown relation " + p.tokens[1]);
            if (static_cast<int>(p.tokens.size()) - 2 != vocab[sym].arity)
                p.fail("arity mismatch for " + p.tokens[1]);
            Tuple t;
            for (std::size_t i = 2; i < p.tokens.size(); ++i) {
                int e = p.number(p.tokens[i], "element");
                if (e >= *domain) p.fail("element out of range: " + p.tokens[i]);
                t.push_back(e);
            }
            rels[sym].push_back(std::move(t));
        } else if (kw == "target") {
            if (!domain) p.fail("target before structure");
            if (target_arity) p.fail("duplicate target line");
            if (p.tokens.size() != 2) p.fail("expected: target M");
            target_arity = p.number(p.tokens[1], "target arity");
            if (*target_arity < 1) p.fail("target arity must be >= 1");
        } else if (kw == "tup") {
            if (!target_arity) p.fail("tup before target");
            if (static_cast<int>(p.tokens.size()) - 1 != *target_arity)
                p.fail("tuple arity mismatch");
            Tuple t;
            for (std::size_t i = 1; i < p.tokens.size(); ++i) {
                int e = p.number(p.tokens[i], "element");
                if (e >= *domain) p.fail("element out of range: " + p.tokens[i]);
                t.push_back(e);
            }
            target_tuples.push_back(std::move(t));
        } else if (kw == "exists" && !require_target) {
            if (sentence) p.fail("duplicate sentence line");
            std::string line = p.tokens[0];
            for (std::size_t i = 1; i < p.tokens.size(); ++i) line += " " + p.tokens[i];
            sentence = line;
        } else {
            p.fail("unknown directive '" + kw + "'");
        }
    }
    if (!domain) throw ParseError("missing domain line");
    if (require_target && !target_arity) throw ParseError("missing target line");

    ParsedFile out{Structure(*domain, std::move(vocab), std::move(rels)), std::nullopt, sentence};
    if (target_arity)
        out.target = Target(*target_arity, std::move(target_tuples));
    return out;
}

} // namespace

Instance parse_instance(const std::string& text) {
    ParsedFile f = parse_file(text, true);
    return Instance{std::move(f.structure), std::move(*f.target)};
}

ParsedFile parse_mc_file(const std::string& text) {
    return parse_file(text, false);
}

std::string print_structure(const Structure& s) {
    std::string out;
    for (const auto& sym : s.vocab())
        out += "vocab " + sym.name + " " + std::to_string(sym.arity) + "\n";
    out += "domain " + std::to_string(s.domain_size()) + "\n";
    for (std::size_t i = 0; i < s.vocab().size(); ++i)
        for (const auto& t : s.tuples(static_cast<int>(i)))
            out += "rel " + s.vocab()[i].name + " " + join(t) + "\n";
    return out;
}

std::string print_instance(const Structure& s, const Target& t) {
    std::string out = print_structure(s);
    out += "target " + std::to_string(t.arity()) + "\n";
    for (const auto& tup : t.sorted_tuples())
        out += "tup " + join(tup) + "\n";
    return out;
}

bool is_graph(const Structure& s) {
    if (s.vocab().size() != 1 || s.vocab()[0].name != "E" || s.vocab()[0].arity != 2)
        return false;
    for (const auto& t : s.tuples(0)) {
        if (t[0] == t[1]) return false;
        if (!s.holds(0, Tuple{t[1], t[0]})) return false;
    }
    return true;
}

namespace {

// max{log2 x, 1}; expressions like log2(0) or log2(1) read as 1
double log2c(double x) {
    if (x <= 0.0) return 1.0;
    return std::max(std::log2(x), 1.0);
}

} // namespace

SizeReport size_measures(const Structure& s, const Target& t) {
    double n_sym = static_cast<double>(s.vocab().size());
    double sum_ar = 0.0;
    double sum_ar_tuples = 0.0;
    for (std::size_t i = 0; i < s.vocab().size(); ++i) {
        sum_ar += s.vocab()[i].arity;
        sum_ar_tuples += static_cast<double>(s.vocab()[i].arity) *
                         static_cast<double>(s.tuples(static_cast<int>(i)).size());
    }
    SizeReport r;
    r.size_vocab = (n_sym + sum_ar) * log2c(n_sym);
    double dom = static_cast<double>(s.domain_size());
    r.size_structure = r.size_vocab + (dom + sum_ar_tuples) * log2c(dom);
    r.size_instance =
        (r.size_structure + static_cast<double>(t.arity()) * static_cast<double>(t.size())) *
        log2c(dom);
    return r;
}

long long param_kappa(const Target& t) {
    return static_cast<long long>(t.arity()) * static_cast<long long>(t.size());
}

} // namespace opendef
