#include "opendef/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

namespace opendef {

Formula Formula::top() {
    Formula f;
    f.kind_ = Kind::True;
    return f;
}

Formula Formula::bottom() {
    Formula f;
    f.kind_ = Kind::False;
    return f;
}

Formula Formula::eq(int lhs, int rhs) {
    if (lhs < 1 || rhs < 1) throw std::invalid_argument("eq: variable indices start at 1");
    Formula f;
    f.kind_ = Kind::Eq;
    f.lhs_ = lhs;
    f.rhs_ = rhs;
    return f;
}

Formula Formula::rel(std::string name, std::vector<int> vars) {
    if (vars.empty()) throw std::invalid_argument("rel: at least one argument");
    for (int v : vars)
        if (v < 1) throw std::invalid_argument("rel: variable indices start at 1");
    Formula f;
    f.kind_ = Kind::Rel;
    f.name_ = std::move(name);
    f.vars_ = std::move(vars);
    return f;
}

Formula Formula::negate(Formula f) {
    if (f.kind_ == Kind::True) return bottom();
    if (f.kind_ == Kind::False) return top();
    Formula g;
    g.kind_ = Kind::Not;
    g.children_.push_back(std::move(f));
    return g;
}

Formula Formula::conj(std::vector<Formula> children) {
    std::vector<Formula> kept;
    for (auto& c : children) {
        if (c.kind_ == Kind::False) return bottom();
        if (c.kind_ != Kind::True) kept.push_back(std::move(c));
    }
    if (kept.empty()) return top();
    if (kept.size() == 1) return std::move(kept.front());
    Formula f;
    f.kind_ = Kind::And;
    f.children_ = std::move(kept);
    return f;
}

Formula Formula::disj(std::vector<Formula> children) {
    std::vector<Formula> kept;
    for (auto& c : children) {
        if (c.kind_ == Kind::True) return top();
        if (c.kind_ != Kind::False) kept.push_back(std::move(c));
    }
    if (kept.empty()) return bottom();
    if (kept.size() == 1) return std::move(kept.front());
    Formula f;
    f.kind_ = Kind::Or;
    f.children_ = std::move(kept);
    return f;
}

int max_var(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False: return 0;
        case Formula::Kind::Eq: return std::max(f.lhs(), f.rhs());
        case Formula::Kind::Rel: return *std::max_element(f.rel_vars().begin(), f.rel_vars().end());
        default: {
            int m = 0;
            for (const auto& c : f.children()) m = std::max(m, max_var(c));
            return m;
        }
    }
}

namespace {

int lookup_symbol(const Structure& s, const Formula& f) {
    int sym = s.symbol_index(f.rel_name());
    if (sym < 0) throw std::invalid_argument("eval: unknown relation symbol " + f.rel_name());
    if (s.vocab()[sym].arity != static_cast<int>(f.rel_vars().size()))
        throw std::invalid_argument("eval: arity mismatch for " + f.rel_name());
    return sym;
}

bool eval_rec(const Structure& s, const Formula& f, const Assignment& a) {
    switch (f.kind()) {
        case Formula::Kind::True: return true;
        case Formula::Kind::False: return false;
        case Formula::Kind::Eq: {
            int hi = std::max(f.lhs(), f.rhs());
            if (hi > static_cast<int>(a.size()))
                throw std::invalid_argument("eval: assignment too short");
            return a[f.lhs() - 1] == a[f.rhs() - 1];
        }
        case Formula::Kind::Rel: {
            int sym = lookup_symbol(s, f);
            Tuple t;
            t.reserve(f.rel_vars().size());
            for (int v : f.rel_vars()) {
                if (v > static_cast<int>(a.size()))
                    throw std::invalid_argument("eval: assignment too short");
                t.push_back(a[v - 1]);
            }
            return s.holds(sym, t);
        }
        case Formula::Kind::Not: return !eval_rec(s, f.child(), a);
        case Formula::Kind::And:
            for (const auto& c : f.children())
                if (!eval_rec(s, c, a)) return false;
            return true;
        case Formula::Kind::Or:
            for (const auto& c : f.children())
                if (eval_rec(s, c, a)) return true;
            return false;
    }
    return false;
}

// three-valued evaluation on a prefix assignment; nullopt means the value
// still depends on unassigned variables
std::optional<bool> eval_prefix(const Structure& s, const Formula& f,
                                const Assignment& a, int assigned) {
    switch (f.kind()) {
        case Formula::Kind::True: return true;
        case Formula::Kind::False: return false;
        case Formula::Kind::Eq:
            if (f.lhs() > assigned || f.rhs() > assigned) return std::nullopt;
            return a[f.lhs() - 1] == a[f.rhs() - 1];
        case Formula::Kind::Rel: {
            int sym = lookup_symbol(s, f);
            Tuple t;
            t.reserve(f.rel_vars().size());
            for (int v : f.rel_vars()) {
                if (v > assigned) return std::nullopt;
                t.push_back(a[v - 1]);
            }
            return s.holds(sym, t);
        }
        case Formula::Kind::Not: {
            auto v = eval_prefix(s, f.child(), a, assigned);
            if (!v) return std::nullopt;
            return !*v;
        }
        case Formula::Kind::And: {
            bool unknown = false;
            for (const auto& c : f.children()) {
                auto v = eval_prefix(s, c, a, assigned);
                if (!v) unknown = true;
                else if (!*v) return false;
            }
            if (unknown) return std::nullopt;
            return true;
        }
        case Formula::Kind::Or: {
            bool unknown = false;
            for (const auto& c : f.children()) {
                auto v = eval_prefix(s, c, a, assigned);
                if (!v) unknown = true;
                else if (*v) return true;
            }
            if (unknown) return std::nullopt;
            return false;
        }
    }
    return std::nullopt;
}

} // namespace

bool eval_open(const Structure& s, const Formula& f, const Assignment& a) {
    return eval_rec(s, f, a);
}

std::vector<Tuple> extension(const Structure& s, const Formula& f, int m, long long budget) {
    if (m < 1) throw std::invalid_argument("extension: arity must be >= 1");
    if (max_var(f) > m) throw std::invalid_argument("extension: formula uses variables beyond x" +
                                                    std::to_string(m));
    long long space = 1;
    for (int i = 0; i < m; ++i) {
        space *= s.domain_size();
        if (space > budget)
            throw BudgetError("extension: |A|^m exceeds budget of " + std::to_string(budget));
    }
    std::vector<Tuple> out;
    Tuple a(static_cast<std::size_t>(m), 0);
    for (;;) {
        if (eval_rec(s, f, a)) out.push_back(a);
        int pos = m - 1;
        while (pos >= 0 && a[pos] == s.domain_size() - 1) a[pos--] = 0;
        if (pos < 0) break;
        ++a[pos];
    }
    return out;
}

McResult mc_exists(const Structure& s, const ExistSentence& phi) {
    if (phi.var_count < 1) throw std::invalid_argument("mc: sentence binds no variables");
    if (max_var(phi.matrix) > phi.var_count)
        throw std::invalid_argument("mc: matrix uses unbound variables");
    Assignment a(static_cast<std::size_t>(phi.var_count), 0);
    // depth-first in lexicographic order; a definite prefix verdict either
    // prunes the subtree or completes with zeros (the least completion)
    int depth = 0;
    for (;;) {
        auto v = eval_prefix(s, phi.matrix, a, depth);
        bool descend = false;
        if (v.has_value()) {
            if (*v) {
                std::fill(a.begin() + depth, a.end(), 0);
                return McResult{true, a};
            }
        } else if (depth < phi.var_count) {
            ++depth;
            a[depth - 1] = 0;
            descend = true;
        }
        if (!descend) {
            // backtrack to the deepest position with a next value
            while (depth > 0 && a[depth - 1] == s.domain_size() - 1) --depth;
            if (depth == 0) return McResult{false, std::nullopt};
            ++a[depth - 1];
        }
    }
}

namespace {

struct SizeCounts {
    long long relcount = 0;
    long long varcount = 0;
    std::set<int> distinct;
};

void count_rec(const Formula& f, SizeCounts& c) {
    switch (f.kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False: return;
        case Formula::Kind::Eq:
            c.varcount += 2;
            c.distinct.insert(f.lhs());
            c.distinct.insert(f.rhs());
            return;
        case Formula::Kind::Rel:
            c.relcount += 1;
            c.varcount += static_cast<long long>(f.rel_vars().size());
            for (int v : f.rel_vars()) c.distinct.insert(v);
            return;
        default:
            for (const auto& ch : f.children()) count_rec(ch, c);
    }
}

double log2c(double x) {
    if (x <= 0.0) return 1.0;
    return std::max(std::log2(x), 1.0);
}

} // namespace

double formula_size(const Formula& f, const std::vector<RelSymbol>& vocab) {
    SizeCounts c;
    count_rec(f, c);
    return static_cast<double>(c.relcount) * log2c(static_cast<double>(vocab.size())) +
           static_cast<double>(c.varcount) * log2c(static_cast<double>(c.distinct.size()));
}

double formula_size(const ExistSentence& phi, const std::vector<RelSymbol>& vocab) {
    SizeCounts c;
    count_rec(phi.matrix, c);
    for (int v = 1; v <= phi.var_count; ++v) c.distinct.insert(v);
    c.varcount += phi.var_count;  // one occurrence per quantifier
    return static_cast<double>(c.relcount) * log2c(static_cast<double>(vocab.size())) +
           static_cast<double>(c.varcount) * log2c(static_cast<double>(c.distinct.size()));
}

long long literal_count(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False: return 0;
        case Formula::Kind::Eq:
        case Formula::Kind::Rel: return 1;
        default: {
            long long n = 0;
            for (const auto& c : f.children()) n += literal_count(c);
            return n;
        }
    }
}

Formula rename_vars(const Formula& f, int offset) {
    switch (f.kind()) {
        case Formula::Kind::True: return Formula::top();
        case Formula::Kind::False: return Formula::bottom();
        case Formula::Kind::Eq: return Formula::eq(f.lhs() + offset, f.rhs() + offset);
        case Formula::Kind::Rel: {
            std::vector<int> vars = f.rel_vars();
            for (int& v : vars) v += offset;
            return Formula::rel(f.rel_name(), std::move(vars));
        }
        case Formula::Kind::Not: return Formula::negate(rename_vars(f.child(), offset));
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<Formula> kids;
            kids.reserve(f.children().size());
            for (const auto& c : f.children()) kids.push_back(rename_vars(c, offset));
            return f.kind() == Formula::Kind::And ? Formula::conj(std::move(kids))
                                                  : Formula::disj(std::move(kids));
        }
    }
    return Formula::top();
}

namespace {

// precedence levels: 0 formula (|), 1 term (&), 2 factor
void print_rec(const Formula& f, int level, std::string& out) {
    switch (f.kind()) {
        case Formula::Kind::True: out += "x1=x1"; return;
        case Formula::Kind::False: out += "x1!=x1"; return;
        case Formula::Kind::Eq:
            out += "x" + std::to_string(f.lhs()) + "=x" + std::to_string(f.rhs());
            return;
        case Formula::Kind::Rel: {
            out += f.rel_name() + "(";
            for (std::size_t i = 0; i < f.rel_vars().size(); ++i) {
                if (i) out += ",";
                out += "x" + std::to_string(f.rel_vars()[i]);
            }
            out += ")";
            return;
        }
        case Formula::Kind::Not: {
            const Formula& c = f.child();
            if (c.kind() == Formula::Kind::Eq) {
                out += "x" + std::to_string(c.lhs()) + "!=x" + std::to_string(c.rhs());
            } else if (c.kind() == Formula::Kind::Rel || c.kind() == Formula::Kind::Not) {
                out += "~";
                print_rec(c, 2, out);
            } else {
                out += "~(";
                print_rec(c, 0, out);
                out += ")";
            }
            return;
        }
        case Formula::Kind::And: {
            bool parens = level > 1;
            if (parens) out += "(";
            for (std::size_t i = 0; i < f.children().size(); ++i) {
                if (i) out += "&";
                print_rec(f.children()[i], 2, out);
            }
            if (parens) out += ")";
            return;
        }
        case Formula::Kind::Or: {
            bool parens = level > 0;
            if (parens) out += "(";
            for (std::size_t i = 0; i < f.children().size(); ++i) {
                if (i) out += "|";
                print_rec(f.children()[i], 1, out);
            }
            if (parens) out += ")";
            return;
        }
    }
}

} // namespace

std::string to_text(const Formula& f) {
    std::string out;
    print_rec(f, 0, out);
    return out;
}

std::string to_text(const ExistSentence& phi) {
    std::string out = "exists ";
    for (int v = 1; v <= phi.var_count; ++v) {
        if (v > 1) out += ",";
        out += "x" + std::to_string(v);
    }
    out += " . ";
    out += to_text(phi.matrix);
    return out;
}

namespace {

struct Token {
    enum Type { Name, Var, LParen, RParen, Comma, Amp, Pipe, Tilde, EqSign, NeqSign, Dot, End };
    Type type;
    std::string text;
    int var = 0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("column " + std::to_string(tok_.pos + 1) + ": " + msg);
    }

private:
    void advance() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= text_.size()) {
            tok_.type = Token::End;
            tok_.text.clear();
            return;
        }
        char c = text_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_'))
                ++i_;
            tok_.text = text_.substr(start, i_ - start);
            if (tok_.text.size() >= 2 && tok_.text[0] == 'x' &&
                std::all_of(tok_.text.begin() + 1, tok_.text.end(),
                            [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
                if (tok_.text[1] == '0')
                    throw ParseError("column " + std::to_string(start + 1) +
                                     ": bad variable " + tok_.text);
                if (tok_.text.size() > 8)
                    throw ParseError("column " + std::to_string(start + 1) +
                                     ": variable index too large");
                tok_.type = Token::Var;
                tok_.var = std::stoi(tok_.text.substr(1));
            } else {
                tok_.type = Token::Name;
            }
            return;
        }
        ++i_;
        switch (c) {
            case '(': tok_.type = Token::LParen; return;
            case ')': tok_.type = Token::RParen; return;
            case ',': tok_.type = Token::Comma; return;
            case '&': tok_.type = Token::Amp; return;
            case '|': tok_.type = Token::Pipe; return;
            case '~': tok_.type = Token::Tilde; return;
            case '=': tok_.type = Token::EqSign; return;
            case '.': tok_.type = Token::Dot; return;
            case '!':
                if (i_ < text_.size() && text_[i_] == '=') {
                    ++i_;
                    tok_.type = Token::NeqSign;
                    return;
                }
                throw ParseError("column " + std::to_string(tok_.pos + 1) + ": stray '!'");
            default:
                throw ParseError("column " + std::to_string(tok_.pos + 1) +
                                 ": unexpected character '" + std::string(1, c) + "'");
        }
    }

    const std::string& text_;
    std::size_t i_ = 0;
    Token tok_;
};

class FormulaParser {
public:
    FormulaParser(const std::string& text, const std::vector<RelSymbol>& vocab)
        : lex_(text), vocab_(vocab) {}

    Formula formula() {
        std::vector<Formula> terms;
        terms.push_back(term());
        while (lex_.peek().type == Token::Pipe) {
            lex_.take();
            terms.push_back(term());
        }
        return terms.size() == 1 ? std::move(terms.front()) : Formula::disj(std::move(terms));
    }

    void expect_end() {
        if (lex_.peek().type != Token::End) lex_.fail("trailing input after formula");
    }

    Lexer& lexer() { return lex_; }

private:
    Formula term() {
        std::vector<Formula> factors;
        factors.push_back(factor());
        while (lex_.peek().type == Token::Amp) {
            lex_.take();
            factors.push_back(factor());
        }
        return factors.size() == 1 ? std::move(factors.front()) : Formula::conj(std::move(factors));
    }

    Formula factor() {
        if (lex_.peek().type == Token::Tilde) {
            lex_.take();
            return Formula::negate(factor());
        }
        if (lex_.peek().type == Token::LParen) {
            lex_.take();
            Formula f = formula();
            if (lex_.peek().type != Token::RParen) lex_.fail("expected ')'");
            lex_.take();
            return f;
        }
        return atom();
    }

    Formula atom() {
        Token t = lex_.take();
        if (t.type == Token::Var) {
            Token op = lex_.take();
            if (op.type != Token::EqSign && op.type != Token::NeqSign)
                lex_.fail("expected '=' or '!=' after variable");
            Token rhs = lex_.take();
            if (rhs.type != Token::Var) lex_.fail("expected variable on right of equality");
            Formula f = Formula::eq(t.var, rhs.var);
            return op.type == Token::EqSign ? f : Formula::negate(std::move(f));
        }
        if (t.type != Token::Name) lex_.fail("expected atom");
        int arity = -1;
        for (const auto& sym : vocab_)
            if (sym.name == t.text) arity = sym.arity;
        if (arity < 0) throw ParseError("unknown relation symbol " + t.text);
        if (lex_.peek().type != Token::LParen) lex_.fail("expected '(' after relation name");
        lex_.take();
        std::vector<int> vars;
        for (;;) {
            Token v = lex_.take();
            if (v.type != Token::Var) lex_.fail("expected variable");
            vars.push_back(v.var);
            Token sep = lex_.take();
            if (sep.type == Token::RParen) break;
            if (sep.type != Token::Comma) lex_.fail("expected ',' or ')'");
        }
        if (static_cast<int>(vars.size()) != arity)
            throw ParseError("relation " + t.text + " expects " + std::to_string(arity) +
                             " arguments, got " + std::to_string(vars.size()));
        return Formula::rel(t.text, std::move(vars));
    }

    Lexer lex_;
    const std::vector<RelSymbol>& vocab_;
};

} // namespace

Formula parse_formula(const std::string& text, const std::vector<RelSymbol>& vocab) {
    FormulaParser p(text, vocab);
    Formula f = p.formula();
    p.expect_end();
    return f;
}

ExistSentence parse_sentence(const std::string& text, const std::vector<RelSymbol>& vocab) {
    FormulaParser p(text, vocab);
    Lexer& lex = p.lexer();
    Token kw = lex.take();
    if (kw.type != Token::Name || kw.text != "exists")
        throw ParseError("sentence must start with 'exists'");
    int expected = 1;
    for (;;) {
        Token v = lex.take();
        if (v.type != Token::Var) lex.fail("expected variable in quantifier prefix");
        if (v.var != expected)
            throw ParseError("quantifier prefix must bind x1..xl in order, got " + v.text);
        ++expected;
        Token sep = lex.take();
        if (sep.type == Token::Dot) break;
        if (sep.type != Token::Comma) lex.fail("expected ',' or '.' in quantifier prefix");
    }
    ExistSentence phi;
    phi.var_count = expected - 1;
    phi.matrix = p.formula();
    p.expect_end();
    if (max_var(phi.matrix) > phi.var_count)
        throw ParseError("matrix uses a variable beyond the quantifier prefix");
    return phi;
}

} // namespace opendef
