#include <doctest.h>

#include "hyperltl/error.hpp"
#include "hyperltl/formula.hpp"
#include "hyperltl/oracle.hpp"
#include "testing.hpp"

using namespace hyperltl;
using testing::Rng;

namespace {

Formula a(const std::string& ap, const std::string& var) { return Formula::atom(ap, var); }

bool nnf_shape(const Formula& f)
{
    switch (f.op()) {
    case Op::Not: return f.operand().op() == Op::Atom;
    case Op::Atom:
    case Op::True:
    case Op::False: return true;
    case Op::And:
    case Op::Or:
    case Op::Until:
    case Op::Release: return nnf_shape(f.lhs()) && nnf_shape(f.rhs());
    case Op::Next: return nnf_shape(f.operand());
    case Op::Exists:
    case Op::Forall: return nnf_shape(f.body());
    default: return false;
    }
}

TraceAssignment random_assignment(Rng& rng, const std::vector<std::string>& vars,
                                  const std::vector<std::string>& atoms)
{
    TraceAssignment pi;
    for (const auto& v : vars)
        pi[v] = testing::random_lasso(rng, atoms, 1, 3, 3);
    return pi;
}

} // namespace

TEST_CASE("parse: examples from the grammar")
{
    const Formula od = parse_formula("forall p1. forall p2. G (l[p1] <-> l[p2])");
    CHECK(od == Formula::forall("p1", Formula::forall("p2", Formula::globally(Formula::iff(a("l", "p1"), a("l", "p2"))))));

    CHECK(parse_formula("exists p. X a[p]") == Formula::exists("p", Formula::next(a("a", "p"))));
    CHECK(parse_formula("a[p] & b[p] | c[p]")
          == Formula::disjunction(Formula::conjunction(a("a", "p"), a("b", "p")), a("c", "p")));
    CHECK(parse_formula("a[p] -> b[p] -> c[p]")
          == Formula::implies(a("a", "p"), Formula::implies(a("b", "p"), a("c", "p"))));
    CHECK(parse_formula("a[p] U b[p] U c[p]")
          == Formula::until(a("a", "p"), Formula::until(a("b", "p"), a("c", "p"))));
    CHECK(parse_formula("!a[p] U X b[p]") == Formula::until(Formula::negation(a("a", "p")), Formula::next(a("b", "p"))));
    CHECK(parse_formula("p ={a,b} q") == Formula::trace_eq("p", {"a", "b"}, "q"));
    CHECK(parse_formula("p !={a} q") == Formula::trace_neq("p", {"a"}, "q"));
    CHECK(parse_formula("true W false") == Formula::weak_until(Formula::truth(), Formula::falsity()));
    CHECK(parse_formula("# comment\nforall p. # more\n a[p]") == Formula::forall("p", a("a", "p")));
}

TEST_CASE("parse: errors")
{
    CHECK_THROWS_AS(parse_formula("forall p. a[q]"), UnboundVariableError);
    try {
        parse_formula("forall p. a[q]");
    } catch (const UnboundVariableError& e) {
        CHECK(e.variable() == "q");
    }
    CHECK_THROWS_AS(parse_formula("forall p. forall p. a[p]"), ParseError);
    CHECK_THROWS_AS(parse_formula("forall p. (a[p]"), ParseError);
    CHECK_THROWS_AS(parse_formula("a[p] &"), ParseError);
    CHECK_THROWS_AS(parse_formula("a[p] & forall q. b[q]"), ParseError);
    CHECK_THROWS_AS(parse_formula("p ={} q"), ParseError);
    try {
        parse_formula("forall p.\n  a[p] & & b[p]");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 10);
    }
    // bare bodies may mention free variables (oracle use)
    CHECK_NOTHROW(parse_formula("a[p] U b[q]"));
}

TEST_CASE("print: round trip on random formulas")
{
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        const Formula f = testing::random_formula(rng, 4, {"p", "q"}, {"a", "b"});
        const Formula g = Formula::forall("p", Formula::exists("q", f));
        INFO(g.to_string());
        CHECK(parse_formula(g.to_string()) == g);
        CHECK(parse_formula(f.to_string()) == f);
    }
}

TEST_CASE("desugar: sugar expansions")
{
    CHECK(desugar(parse_formula("F a[p]")) == Formula::until(Formula::truth(), a("a", "p")));
    CHECK(desugar(parse_formula("G a[p]")) == Formula::release(Formula::falsity(), a("a", "p")));
    CHECK(desugar(parse_formula("p ={a} q")) == desugar(parse_formula("G (a[p] <-> a[q])")));
    CHECK(desugar(Formula::trace_eq("p", {}, "q")) == Formula::truth());
    CHECK(desugar(parse_formula("p !={a} q")) == desugar(parse_formula("!G (a[p] <-> a[q])")));
}

TEST_CASE("nnf: dualities")
{
    CHECK(to_nnf(parse_formula("!(a[p] U b[q])"))
          == Formula::release(Formula::negation(a("a", "p")), Formula::negation(a("b", "q"))));
    CHECK(to_nnf(parse_formula("!!a[p]")) == a("a", "p"));
    CHECK(to_nnf(parse_formula("!X a[p]")) == Formula::next(Formula::negation(a("a", "p"))));
    CHECK(to_nnf(Formula::negation(parse_formula("forall p. exists q. a[p] & b[q]")))
          == parse_formula("exists p. forall q. !a[p] | !b[q]"));
    CHECK(negate(parse_formula("forall p. exists q. a[q]")) == parse_formula("exists p. forall q. !a[q]"));
}

TEST_CASE("desugar and nnf preserve semantics")
{
    Rng rng(11);
    const std::vector<std::string> vars{"p", "q"}, atoms{"a", "b"};
    for (int i = 0; i < 400; ++i) {
        const Formula f = testing::random_formula(rng, 4, vars, atoms);
        const Formula d = desugar(f), n = to_nnf(f);
        REQUIRE(nnf_shape(n));
        for (int j = 0; j < 5; ++j) {
            const auto pi = random_assignment(rng, vars, atoms);
            INFO(f.to_string());
            CHECK(eval_qf(d, pi) == eval_qf(f, pi));
            CHECK(eval_qf(n, pi) == eval_qf(f, pi));
            CHECK(eval_qf(to_nnf(Formula::negation(f)), pi) == !eval_qf(f, pi));
        }
    }
}

TEST_CASE("classify by quantifier blocks")
{
    using K = FragmentClass::Kind;
    auto c = [](const char* text) { return classify(parse_formula(text)); };
    CHECK(c("forall p1. forall p2. exists p3. a[p1]") == FragmentClass{K::ForallExists, 2, 1, 0});
    CHECK(c("forall p1. exists p2. forall p3. a[p1]").kind == K::Unsupported);
    CHECK(c("forall p1. exists p2. forall p3. a[p1]").alternations == 2);
    CHECK(c("forall p. a[p]") == FragmentClass{K::Universal, 1, 0, 0});
    CHECK(c("exists p. forall q. a[p]") == FragmentClass{K::ExistsForall, 1, 1, 0});
    CHECK(c("exists p. a[p]").kind == K::ExistsForall);
    CHECK(c("true").kind == K::QuantifierFree);
    CHECK_THROWS_AS(classify(Formula::globally(Formula::forall("p", a("a", "p")))), UnsupportedFragment);
}

TEST_CASE("prenex helpers")
{
    const Formula f = parse_formula("forall p. exists q. a[p] U b[q]");
    const Prenex p = split_prenex(f);
    REQUIRE(p.prefix.size() == 2);
    CHECK(p.prefix[0].kind == Quantifier::Kind::Forall);
    CHECK(p.prefix[1].var == "q");
    CHECK(join_prenex(p.prefix, p.body) == f);
    CHECK(free_variables(p.body) == std::set<std::string>{"p", "q"});
    CHECK(free_variables(f).empty());
    CHECK(atoms_of(parse_formula("a[p] & p ={b,c} q")) == std::set<std::string>{"a", "b", "c"});
}
