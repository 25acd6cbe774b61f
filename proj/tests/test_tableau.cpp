#include <doctest.h>

#include "hyperltl/error.hpp"
#include "hyperltl/oracle.hpp"
#include "hyperltl/tableau.hpp"
#include "testing.hpp"

using namespace hyperltl;
using testing::Rng;

namespace {

const std::vector<std::string> AB{"a", "b"};

Formula body(const char* text) { return to_nnf(parse_formula(text)); }

} // namespace

TEST_CASE("closure")
{
    const auto cl = closure(body("a[p] U b[p]"));
    // a, b, a U b and their negations
    CHECK(cl.size() == 6);
    CHECK(std::is_sorted(cl.begin(), cl.end()));
    CHECK(std::find(cl.begin(), cl.end(), Formula::negation(body("a[p] U b[p]"))) != cl.end());
}

TEST_CASE("maximal consistent sets pick one of each pair")
{
    const Formula psi = body("X a[p] & (a[p] U b[p])");
    const auto sets = maximal_consistent_sets(psi);
    REQUIRE_FALSE(sets.empty());
    const auto cl = closure(psi);
    for (const auto& s : sets) {
        for (const auto& f : cl) {
            const bool has = s.count(f) > 0;
            const bool has_neg = s.count(to_nnf(Formula::negation(f))) > 0 || s.count(Formula::negation(f)) > 0;
            CHECK(has != has_neg);
        }
        // propositional consistency: a U b with !b forces a
        const bool until = s.count(body("a[p] U b[p]")) > 0;
        if (until && !s.count(body("b[p]")))
            CHECK(s.count(body("a[p]")) == 1);
    }
}

TEST_CASE("formula automata agree with the oracle")
{
    Rng rng(21);
    const std::vector<std::string> vars{"p", "q"};
    for (int round = 0; round < 200; ++round) {
        const Formula psi = to_nnf(testing::random_formula(rng, 3, vars, AB));
        const BuchiAutomaton a = build_formula_automaton(psi, vars, AB);
        CHECK(a.arity() == 2);
        for (int i = 0; i < 25; ++i) {
            const LassoWord x = testing::random_lasso(rng, AB, 1, 3, 3), y = testing::random_lasso(rng, AB, 1, 3, 3);
            std::vector<LassoWord> pair{x, y};
            const LassoWord z = zip(pair);
            INFO(psi.to_string() << " on " << z.to_string());
            CHECK(accepts(a, z) == eval_qf(psi, {{"p", x}, {"q", y}}));
        }
    }
}

TEST_CASE("generalized tableau agrees with its degeneralization")
{
    Rng rng(22);
    for (int round = 0; round < 80; ++round) {
        const Formula psi = to_nnf(testing::random_formula(rng, 3, {"p"}, AB));
        const Tableau t = build_tableau(psi, {"p"}, AB);
        CHECK(t.sets.size() == t.automaton.num_states());
        CHECK(t.untils.size() == t.automaton.num_sets());
        CHECK(t.sets[0].empty());
        const BuchiAutomaton d = build_formula_automaton(psi, {"p"}, AB);
        for (int i = 0; i < 25; ++i) {
            const LassoWord w = testing::random_lasso(rng, AB, 1, 3, 3);
            CHECK(testing::naive_accepts(t.automaton, w) == eval_qf(psi, {{"p", w}}));
            CHECK(accepts(d, w) == eval_qf(psi, {{"p", w}}));
        }
    }
}

TEST_CASE("one acceptance set per until")
{
    const Tableau t = build_tableau(body("(a[p] U b[p]) | G F a[p]"), {"p"}, AB);
    CHECK(t.untils.size() == 2);
    const Tableau g = build_tableau(body("G a[p]"), {"p"}, AB);
    CHECK(g.untils.empty());
}

TEST_CASE("extra atoms are unconstrained")
{
    const auto a = build_formula_automaton(body("G a[p]"), {"p"}, {"a", "b", "c"});
    const std::vector<std::string> abc{"a", "b", "c"};
    CHECK(accepts(a, testing::word(abc, {{"a", "c"}}, {{"a", "b"}})));
    CHECK_FALSE(accepts(a, testing::word(abc, {{"c"}}, {{"a"}})));
}

TEST_CASE("input errors")
{
    CHECK_THROWS_AS(build_tableau(parse_formula("G a[p]"), {"p"}, AB), ValidationError);
    CHECK_THROWS_AS(build_tableau(body("c[p]"), {"p"}, AB), ValidationError);
    CHECK_THROWS_AS(build_tableau(body("a[r]"), {"p"}, AB), UnboundVariableError);
    CHECK_THROWS_AS(build_tableau(Formula::forall("p", Formula::atom("a", "p")), {"p"}, AB), UnsupportedFragment);
}

TEST_CASE("merged formula automaton matches the tableau and is no larger")
{
    Rng rng(23);
    const std::vector<std::string> vars{"p", "q"};
    for (int round = 0; round < 100; ++round) {
        const Formula psi = to_nnf(testing::random_formula(rng, 3, vars, AB));
        const Tableau t = build_tableau(psi, vars, AB);
        if (t.automaton.num_edges() > 20000)
            continue; // the unmerged tableau is quadratic in its state count
        const BuchiAutomaton full = degeneralize(t.automaton);
        const BuchiAutomaton merged = build_formula_automaton(psi, vars, AB);
        CHECK(merged.num_states() <= full.num_states());
        for (int i = 0; i < 20; ++i) {
            const LassoWord x = testing::random_lasso(rng, AB, 1, 3, 3), y = testing::random_lasso(rng, AB, 1, 3, 3);
            std::vector<LassoWord> pair{x, y};
            const LassoWord z = zip(pair);
            CHECK(accepts(merged, z) == accepts(full, z));
        }
    }
}
