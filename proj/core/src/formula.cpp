#include "hyperltl/formula.hpp"

#include "hyperltl/error.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <tuple>
#include <utility>

namespace hyperltl {

struct Formula::Node {
    Op op;
    std::string var;
    std::string var2;
    std::string ap;
    std::vector<std::string> atoms;
    std::vector<Formula> kids;
};

namespace {

bool is_binary(Op op)
{
    switch (op) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
    case Op::Until:
    case Op::Release:
    case Op::WeakUntil:
        return true;
    default:
        return false;
    }
}

bool is_unary(Op op)
{
    switch (op) {
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Globally:
        return true;
    default:
        return false;
    }
}

} // namespace

Formula Formula::atom(std::string ap, std::string var)
{
    auto n = std::make_shared<Node>();
    n->op = Op::Atom;
    n->ap = std::move(ap);
    n->var = std::move(var);
    return Formula(std::move(n));
}

Formula Formula::truth()
{
    static const Formula t(std::make_shared<Node>(Node{Op::True, {}, {}, {}, {}, {}}));
    return t;
}

Formula Formula::falsity()
{
    static const Formula f(std::make_shared<Node>(Node{Op::False, {}, {}, {}, {}, {}}));
    return f;
}

Formula Formula::trace_eq(std::string lhs_var, std::vector<std::string> atoms, std::string rhs_var)
{
    auto n = std::make_shared<Node>();
    n->op = Op::TraceEq;
    n->var = std::move(lhs_var);
    n->var2 = std::move(rhs_var);
    n->atoms = std::move(atoms);
    return Formula(std::move(n));
}

Formula Formula::trace_neq(std::string lhs_var, std::vector<std::string> atoms, std::string rhs_var)
{
    auto n = std::make_shared<Node>();
    n->op = Op::TraceNeq;
    n->var = std::move(lhs_var);
    n->var2 = std::move(rhs_var);
    n->atoms = std::move(atoms);
    return Formula(std::move(n));
}

Formula Formula::exists(std::string var, Formula body)
{
    auto n = std::make_shared<Node>();
    n->op = Op::Exists;
    n->var = std::move(var);
    n->kids.push_back(std::move(body));
    return Formula(std::move(n));
}

Formula Formula::forall(std::string var, Formula body)
{
    auto n = std::make_shared<Node>();
    n->op = Op::Forall;
    n->var = std::move(var);
    n->kids.push_back(std::move(body));
    return Formula(std::move(n));
}

Formula Formula::unary(Op op, Formula f)
{
    if (!is_unary(op))
        throw Error("Formula::unary: not a unary operator");
    auto n = std::make_shared<Node>();
    n->op = op;
    n->kids.push_back(std::move(f));
    return Formula(std::move(n));
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs)
{
    if (!is_binary(op))
        throw Error("Formula::binary: not a binary operator");
    auto n = std::make_shared<Node>();
    n->op = op;
    n->kids.push_back(std::move(lhs));
    n->kids.push_back(std::move(rhs));
    return Formula(std::move(n));
}

Formula Formula::negation(Formula f) { return unary(Op::Not, std::move(f)); }
Formula Formula::conjunction(Formula l, Formula r) { return binary(Op::And, std::move(l), std::move(r)); }
Formula Formula::disjunction(Formula l, Formula r) { return binary(Op::Or, std::move(l), std::move(r)); }
Formula Formula::implies(Formula l, Formula r) { return binary(Op::Implies, std::move(l), std::move(r)); }
Formula Formula::iff(Formula l, Formula r) { return binary(Op::Iff, std::move(l), std::move(r)); }
Formula Formula::next(Formula f) { return unary(Op::Next, std::move(f)); }
Formula Formula::eventually(Formula f) { return unary(Op::Eventually, std::move(f)); }
Formula Formula::globally(Formula f) { return unary(Op::Globally, std::move(f)); }
Formula Formula::until(Formula l, Formula r) { return binary(Op::Until, std::move(l), std::move(r)); }
Formula Formula::release(Formula l, Formula r) { return binary(Op::Release, std::move(l), std::move(r)); }
Formula Formula::weak_until(Formula l, Formula r) { return binary(Op::WeakUntil, std::move(l), std::move(r)); }

Op Formula::op() const noexcept { return node_->op; }
const std::string& Formula::var() const { return node_->var; }
const std::string& Formula::other_var() const { return node_->var2; }
const std::string& Formula::ap() const { return node_->ap; }
const std::vector<std::string>& Formula::eq_atoms() const { return node_->atoms; }
std::size_t Formula::num_children() const noexcept { return node_->kids.size(); }

const Formula& Formula::child(std::size_t i) const
{
    if (i >= node_->kids.size())
        throw Error("Formula::child: index out of range");
    return node_->kids[i];
}

bool Formula::is_literal() const noexcept
{
    return op() == Op::Atom || (op() == Op::Not && node_->kids[0].op() == Op::Atom);
}

bool operator==(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.op == y.op && x.var == y.var && x.var2 == y.var2 && x.ap == y.ap && x.atoms == y.atoms
        && x.kids == y.kids;
}

bool operator<(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return false;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (std::tie(x.op, x.var, x.var2, x.ap, x.atoms) != std::tie(y.op, y.var, y.var2, y.ap, y.atoms))
        return std::tie(x.op, x.var, x.var2, x.ap, x.atoms) < std::tie(y.op, y.var, y.var2, y.ap, y.atoms);
    return std::lexicographical_compare(x.kids.begin(), x.kids.end(), y.kids.begin(), y.kids.end());
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(Op op)
{
    switch (op) {
    case Op::Iff:
        return 1;
    case Op::Implies:
        return 2;
    case Op::Or:
        return 3;
    case Op::And:
        return 4;
    case Op::Until:
    case Op::Release:
    case Op::WeakUntil:
        return 5;
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Globally:
        return 6;
    case Op::Exists:
    case Op::Forall:
        return 0;
    default:
        return 7;
    }
}

bool right_assoc(Op op)
{
    return op == Op::Implies || op == Op::Until || op == Op::Release || op == Op::WeakUntil;
}

const char* symbol(Op op)
{
    switch (op) {
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Iff: return "<->";
    case Op::Until: return "U";
    case Op::Release: return "R";
    case Op::WeakUntil: return "W";
    case Op::Not: return "!";
    case Op::Next: return "X";
    case Op::Eventually: return "F";
    case Op::Globally: return "G";
    default: return "?";
    }
}

void print(std::ostream& os, const Formula& f);

void print_child(std::ostream& os, const Formula& c, bool parens)
{
    if (parens)
        os << '(';
    print(os, c);
    if (parens)
        os << ')';
}

void print_atom_list(std::ostream& os, const std::vector<std::string>& atoms)
{
    os << '{';
    for (std::size_t i = 0; i < atoms.size(); ++i)
        os << (i ? "," : "") << atoms[i];
    os << '}';
}

void print(std::ostream& os, const Formula& f)
{
    const Op op = f.op();
    switch (op) {
    case Op::Exists:
    case Op::Forall:
        os << (op == Op::Exists ? "exists " : "forall ") << f.var() << ". ";
        print(os, f.body());
        return;
    case Op::Atom:
        os << f.ap() << '[' << f.var() << ']';
        return;
    case Op::True:
        os << "true";
        return;
    case Op::False:
        os << "false";
        return;
    case Op::TraceEq:
    case Op::TraceNeq:
        os << f.var() << (op == Op::TraceEq ? " =" : " !=");
        print_atom_list(os, f.eq_atoms());
        os << ' ' << f.other_var();
        return;
    default:
        break;
    }

    const int p = precedence(op);
    if (is_unary(op)) {
        os << symbol(op);
        if (op != Op::Not)
            os << ' ';
        print_child(os, f.operand(), precedence(f.operand().op()) < p);
        return;
    }

    const Op lop = f.lhs().op();
    const Op rop = f.rhs().op();
    const int lp = precedence(lop);
    const int rp = precedence(rop);
    const bool lparen = lp < p || (lp == p && (right_assoc(op) || lop != op));
    const bool rparen = rp < p || (rp == p && (!right_assoc(op) || rop != op) && !(right_assoc(op) && right_assoc(rop)));
    print_child(os, f.lhs(), lparen);
    os << ' ' << symbol(op) << ' ';
    print_child(os, f.rhs(), rparen);
}

} // namespace

std::string Formula::to_string() const
{
    std::ostringstream os;
    print(os, *this);
    return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok {
    Ident,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Bang,
    And,
    Or,
    Arrow,
    DArrow,
    Eq,
    Neq,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') { // comment to end of line
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }
        const std::size_t l = line;
        const std::size_t cc = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), l, cc});
            advance(j - i);
            continue;
        }
        auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
        if (starts("<->")) {
            out.push_back({Tok::DArrow, "<->", l, cc});
            advance(3);
        } else if (starts("->")) {
            out.push_back({Tok::Arrow, "->", l, cc});
            advance(2);
        } else if (starts("!=")) {
            out.push_back({Tok::Neq, "!=", l, cc});
            advance(2);
        } else {
            Tok k;
            switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '[': k = Tok::LBracket; break;
            case ']': k = Tok::RBracket; break;
            case '{': k = Tok::LBrace; break;
            case '}': k = Tok::RBrace; break;
            case ',': k = Tok::Comma; break;
            case '.': k = Tok::Dot; break;
            case '!': k = Tok::Bang; break;
            case '&': k = Tok::And; break;
            case '|': k = Tok::Or; break;
            case '=': k = Tok::Eq; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", l, cc);
            }
            out.push_back({k, std::string(1, c), l, cc});
            advance(1);
        }
    }
    out.push_back({Tok::End, "end of input", line, col});
    return out;
}

bool is_reserved(const std::string& s)
{
    static const std::set<std::string> words = {"forall", "exists", "true", "false", "X", "F", "G", "U", "R", "W"};
    return words.count(s) != 0;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula parse()
    {
        std::vector<Quantifier> prefix;
        while (peek_ident("forall") || peek_ident("exists")) {
            const Token q = take();
            const Token v = expect_ident("trace variable");
            for (const auto& existing : prefix)
                if (existing.var == v.text)
                    throw ParseError("duplicate quantified variable '" + v.text + "'", v.line, v.column);
            expect(Tok::Dot, "'.'");
            prefix.push_back({q.text == "forall" ? Quantifier::Kind::Forall : Quantifier::Kind::Exists, v.text});
        }
        Formula body = parse_iff();
        if (peek().kind != Tok::End)
            fail("unexpected '" + peek().text + "'");

        if (!prefix.empty()) {
            std::set<std::string> bound;
            for (const auto& q : prefix)
                bound.insert(q.var);
            for (const auto& v : free_variables(body))
                if (!bound.count(v))
                    throw UnboundVariableError(v);
        }
        return join_prenex(prefix, body);
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool peek_ident(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }
    Token take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

    Token expect(Tok k, const char* what)
    {
        if (peek().kind != k)
            fail(std::string("expected ") + what + ", found '" + peek().text + "'");
        return take();
    }

    Token expect_ident(const char* what)
    {
        if (peek().kind != Tok::Ident || is_reserved(peek().text))
            fail(std::string("expected ") + what + ", found '" + peek().text + "'");
        return take();
    }

    Formula parse_iff()
    {
        Formula lhs = parse_implies();
        while (peek().kind == Tok::DArrow) {
            take();
            lhs = Formula::iff(lhs, parse_implies());
        }
        return lhs;
    }

    Formula parse_implies()
    {
        Formula lhs = parse_or();
        if (peek().kind == Tok::Arrow) {
            take();
            return Formula::implies(lhs, parse_implies());
        }
        return lhs;
    }

    Formula parse_or()
    {
        Formula lhs = parse_and();
        while (peek().kind == Tok::Or) {
            take();
            lhs = Formula::disjunction(lhs, parse_and());
        }
        return lhs;
    }

    Formula parse_and()
    {
        Formula lhs = parse_temporal();
        while (peek().kind == Tok::And) {
            take();
            lhs = Formula::conjunction(lhs, parse_temporal());
        }
        return lhs;
    }

    Formula parse_temporal()
    {
        Formula lhs = parse_unary();
        if (peek().kind == Tok::Ident) {
            const std::string& t = peek().text;
            std::optional<Op> op;
            if (t == "U")
                op = Op::Until;
            else if (t == "R")
                op = Op::Release;
            else if (t == "W")
                op = Op::WeakUntil;
            if (op) {
                take();
                return Formula::binary(*op, lhs, parse_temporal());
            }
        }
        return lhs;
    }

    Formula parse_unary()
    {
        if (peek().kind == Tok::Bang) {
            take();
            return Formula::negation(parse_unary());
        }
        if (peek().kind == Tok::Ident) {
            const std::string& t = peek().text;
            if (t == "X" || t == "F" || t == "G") {
                const Op op = t == "X" ? Op::Next : (t == "F" ? Op::Eventually : Op::Globally);
                take();
                return Formula::unary(op, parse_unary());
            }
        }
        return parse_primary();
    }

    Formula parse_primary()
    {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            take();
            Formula f = parse_iff();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind != Tok::Ident)
            fail("expected a formula, found '" + t.text + "'");
        if (t.text == "true") {
            take();
            return Formula::truth();
        }
        if (t.text == "false") {
            take();
            return Formula::falsity();
        }
        if (t.text == "forall" || t.text == "exists")
            fail("quantifiers are only allowed in the leading prefix");
        const Token name = expect_ident("proposition or trace variable");
        if (peek().kind == Tok::LBracket) {
            take();
            const Token var = expect_ident("trace variable");
            expect(Tok::RBracket, "']'");
            return Formula::atom(name.text, var.text);
        }
        if (peek().kind == Tok::Eq || peek().kind == Tok::Neq) {
            const bool eq = take().kind == Tok::Eq;
            expect(Tok::LBrace, "'{'");
            std::vector<std::string> atoms;
            atoms.push_back(expect_ident("proposition").text);
            while (peek().kind == Tok::Comma) {
                take();
                atoms.push_back(expect_ident("proposition").text);
            }
            expect(Tok::RBrace, "'}'");
            const Token rhs = expect_ident("trace variable");
            return eq ? Formula::trace_eq(name.text, std::move(atoms), rhs.text)
                      : Formula::trace_neq(name.text, std::move(atoms), rhs.text);
        }
        fail("expected '[' or a trace comparison after '" + name.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

Formula parse_formula(std::string_view text)
{
    return Parser(tokenize(text)).parse();
}

// ---------------------------------------------------------------------------
// Structure queries

Prenex split_prenex(const Formula& f)
{
    Prenex out{{}, f};
    while (out.body.is_quantifier()) {
        out.prefix.push_back({out.body.op() == Op::Forall ? Quantifier::Kind::Forall : Quantifier::Kind::Exists,
                              out.body.var()});
        out.body = out.body.body();
    }
    if (!is_quantifier_free(out.body))
        throw UnsupportedFragment("quantifier below a Boolean or temporal operator (formula is not prenex)");
    return out;
}

Formula join_prenex(const std::vector<Quantifier>& prefix, const Formula& body)
{
    Formula f = body;
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
        f = it->kind == Quantifier::Kind::Forall ? Formula::forall(it->var, f) : Formula::exists(it->var, f);
    return f;
}

bool is_quantifier_free(const Formula& f)
{
    if (f.is_quantifier())
        return false;
    for (std::size_t i = 0; i < f.num_children(); ++i)
        if (!is_quantifier_free(f.child(i)))
            return false;
    return true;
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out)
{
    switch (f.op()) {
    case Op::Atom:
        if (!bound.count(f.var()))
            out.insert(f.var());
        return;
    case Op::TraceEq:
    case Op::TraceNeq:
        if (!bound.count(f.var()))
            out.insert(f.var());
        if (!bound.count(f.other_var()))
            out.insert(f.other_var());
        return;
    case Op::Exists:
    case Op::Forall: {
        const bool fresh = bound.insert(f.var()).second;
        collect_free(f.body(), bound, out);
        if (fresh)
            bound.erase(f.var());
        return;
    }
    default:
        for (std::size_t i = 0; i < f.num_children(); ++i)
            collect_free(f.child(i), bound, out);
    }
}

void collect_atoms(const Formula& f, std::set<std::string>& out)
{
    if (f.op() == Op::Atom)
        out.insert(f.ap());
    else if (f.op() == Op::TraceEq || f.op() == Op::TraceNeq)
        out.insert(f.eq_atoms().begin(), f.eq_atoms().end());
    for (std::size_t i = 0; i < f.num_children(); ++i)
        collect_atoms(f.child(i), out);
}

} // namespace

std::set<std::string> free_variables(const Formula& f)
{
    std::set<std::string> bound;
    std::set<std::string> out;
    collect_free(f, bound, out);
    return out;
}

std::set<std::string> atoms_of(const Formula& f)
{
    std::set<std::string> out;
    collect_atoms(f, out);
    return out;
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

Formula biimplication(const Formula& a, const Formula& b)
{
    // (a -> b) & (b -> a)
    return Formula::conjunction(Formula::disjunction(Formula::negation(a), b),
                                Formula::disjunction(Formula::negation(b), a));
}

Formula globally_desugared(const Formula& f) { return Formula::release(Formula::falsity(), f); }

Formula trace_equality(const Formula& f)
{
    if (f.eq_atoms().empty())
        return Formula::truth();
    std::optional<Formula> acc;
    for (const auto& a : f.eq_atoms()) {
        Formula eq = biimplication(Formula::atom(a, f.var()), Formula::atom(a, f.other_var()));
        acc = acc ? Formula::conjunction(*acc, eq) : eq;
    }
    return globally_desugared(*acc);
}

} // namespace

Formula desugar(const Formula& f)
{
    switch (f.op()) {
    case Op::Atom:
    case Op::True:
    case Op::False:
        return f;
    case Op::Exists:
        return Formula::exists(f.var(), desugar(f.body()));
    case Op::Forall:
        return Formula::forall(f.var(), desugar(f.body()));
    case Op::Not:
        return Formula::negation(desugar(f.operand()));
    case Op::Next:
        return Formula::next(desugar(f.operand()));
    case Op::And:
        return Formula::conjunction(desugar(f.lhs()), desugar(f.rhs()));
    case Op::Or:
        return Formula::disjunction(desugar(f.lhs()), desugar(f.rhs()));
    case Op::Until:
        return Formula::until(desugar(f.lhs()), desugar(f.rhs()));
    case Op::Release:
        return Formula::release(desugar(f.lhs()), desugar(f.rhs()));
    case Op::Eventually:
        return Formula::until(Formula::truth(), desugar(f.operand()));
    case Op::Globally:
        return globally_desugared(desugar(f.operand()));
    case Op::WeakUntil: {
        Formula a = desugar(f.lhs());
        Formula b = desugar(f.rhs());
        return Formula::disjunction(Formula::until(a, b), globally_desugared(a));
    }
    case Op::Implies:
        return Formula::disjunction(Formula::negation(desugar(f.lhs())), desugar(f.rhs()));
    case Op::Iff:
        return biimplication(desugar(f.lhs()), desugar(f.rhs()));
    case Op::TraceEq:
        return trace_equality(f);
    case Op::TraceNeq:
        return Formula::negation(trace_equality(f));
    }
    return f;
}

namespace {

Formula nnf(const Formula& f, bool negated)
{
    switch (f.op()) {
    case Op::Atom:
        return negated ? Formula::negation(f) : f;
    case Op::True:
        return negated ? Formula::falsity() : f;
    case Op::False:
        return negated ? Formula::truth() : f;
    case Op::Not:
        return nnf(f.operand(), !negated);
    case Op::Exists:
        return negated ? Formula::forall(f.var(), nnf(f.body(), true)) : Formula::exists(f.var(), nnf(f.body(), false));
    case Op::Forall:
        return negated ? Formula::exists(f.var(), nnf(f.body(), true)) : Formula::forall(f.var(), nnf(f.body(), false));
    case Op::Next:
        return Formula::next(nnf(f.operand(), negated));
    case Op::And:
    case Op::Or: {
        const bool conj = (f.op() == Op::And) != negated;
        Formula l = nnf(f.lhs(), negated);
        Formula r = nnf(f.rhs(), negated);
        return conj ? Formula::conjunction(l, r) : Formula::disjunction(l, r);
    }
    case Op::Until:
    case Op::Release: {
        const bool until = (f.op() == Op::Until) != negated;
        Formula l = nnf(f.lhs(), negated);
        Formula r = nnf(f.rhs(), negated);
        return until ? Formula::until(l, r) : Formula::release(l, r);
    }
    default:
        throw Error("to_nnf: unexpected operator after desugaring");
    }
}

} // namespace

Formula to_nnf(const Formula& f)
{
    return nnf(desugar(f), false);
}

Formula negate(const Formula& f)
{
    switch (f.op()) {
    case Op::Exists:
        return Formula::forall(f.var(), negate(f.body()));
    case Op::Forall:
        return Formula::exists(f.var(), negate(f.body()));
    default:
        return Formula::negation(f);
    }
}

// ---------------------------------------------------------------------------
// Fragment classification

std::string FragmentClass::to_string() const
{
    switch (kind) {
    case Kind::QuantifierFree:
        return "quantifier-free";
    case Kind::Universal:
        return "universal(" + std::to_string(leading) + ")";
    case Kind::ForallExists:
        return "forall-exists(" + std::to_string(leading) + "," + std::to_string(trailing) + ")";
    case Kind::ExistsForall:
        return "exists-forall(" + std::to_string(leading) + "," + std::to_string(trailing) + ")";
    case Kind::Unsupported:
        return "unsupported(" + std::to_string(alternations) + ")";
    }
    return "?";
}

FragmentClass classify(const Formula& f)
{
    const Prenex p = split_prenex(f);
    std::vector<std::pair<Quantifier::Kind, std::size_t>> blocks;
    for (const auto& q : p.prefix) {
        if (blocks.empty() || blocks.back().first != q.kind)
            blocks.emplace_back(q.kind, 0);
        ++blocks.back().second;
    }

    FragmentClass c;
    if (blocks.empty())
        return c;
    if (blocks.size() > 2) {
        c.kind = FragmentClass::Kind::Unsupported;
        c.alternations = blocks.size() - 1;
        return c;
    }
    c.leading = blocks[0].second;
    c.trailing = blocks.size() == 2 ? blocks[1].second : 0;
    if (blocks[0].first == Quantifier::Kind::Forall)
        c.kind = blocks.size() == 1 ? FragmentClass::Kind::Universal : FragmentClass::Kind::ForallExists;
    else
        c.kind = FragmentClass::Kind::ExistsForall;
    return c;
}

} // namespace hyperltl
