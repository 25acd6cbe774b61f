#include <doctest.h>

#include "hyperltl/automata.hpp"
#include "hyperltl/error.hpp"
#include "testing.hpp"

using namespace hyperltl;
using testing::Rng;

namespace {

const std::vector<std::string> AB{"a", "b"};

// Non-emptiness by graph search: some reachable accepting state lies on a cycle
// of satisfiable edges.
bool naive_nonempty(const BuchiAutomaton& a)
{
    const std::size_t n = a.num_states();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (StateId q = 0; q < n; ++q)
        for (const auto& e : a.edges(q))
            if (e.letter.satisfiable())
                r[q][e.target] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    r[i][j] = r[i][j] || r[k][j];
    for (auto i : a.initial())
        for (StateId q = 0; q < n; ++q)
            if ((q == i || r[i][q]) && a.is_accepting(q) && r[q][q])
                return true;
    return false;
}

LassoWord pair_word(const LassoWord& x, const LassoWord& y)
{
    std::vector<LassoWord> ws{x, y};
    return zip(ws);
}

} // namespace

TEST_CASE("letters")
{
    Letter l(2);
    l.components[0].pos = 1;
    l.components[1].neg = 2;
    CHECK(l.matches(Symbol{1, 1}));
    CHECK(l.matches(Symbol{3, 0}));
    CHECK_FALSE(l.matches(Symbol{0, 0}));
    CHECK_FALSE(l.matches(Symbol{1, 2}));
    CHECK(l.to_string(AB) == "(+a | -b)");
    CHECK(Letter(1).to_string(AB) == "(*)");

    Letter m(2);
    m.components[0].neg = 1;
    CHECK_FALSE(Letter::conjoin(l, m).has_value());
    m.components[0] = {2, 0};
    const auto c = Letter::conjoin(l, m);
    REQUIRE(c.has_value());
    CHECK(c->components[0] == Literal{3, 0});
    CHECK(l.matches(l.concretize()));
    CHECK(Letter::exactly(Symbol{1}, 2).components[0] == Literal{1, 2});
}

TEST_CASE("lasso words")
{
    LassoWord w = testing::word(AB, {{}, {"a"}, {"b"}}, {{"a"}, {"b"}, {"a"}, {"b"}});
    const LassoWord c = canonical(w);
    CHECK(c.stem.size() == 1);
    CHECK(c.cycle.size() == 2);
    CHECK(same_word(w, c));
    CHECK(same_word(w, testing::word(AB, {}, {{"a"}, {"b"}}) ) == false);
    CHECK(same_word(testing::word(AB, {{"a"}}, {{"b"}, {"a"}}), testing::word(AB, {}, {{"a"}, {"b"}})));
    CHECK(testing::word(AB, {}, {{}}).to_string() == "stem = ; cycle = {}");

    LassoWord bad = w;
    bad.cycle.clear();
    CHECK_THROWS_AS(validate(bad), ValidationError);

    const LassoWord x = with_atoms(w, {"b", "c"});
    CHECK(x.atoms == std::vector<std::string>{"b", "c"});
    CHECK(x.stem[2][0] == 1);
    CHECK(x.stem[1][0] == 0);

    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        const LassoWord p = testing::random_lasso(rng, AB, 1, 3, 3), q = testing::random_lasso(rng, AB, 1, 2, 4);
        const LassoWord z = pair_word(p, q);
        CHECK(z.arity == 2);
        const auto parts = unzip(z);
        REQUIRE(parts.size() == 2);
        CHECK(same_word(parts[0], p));
        CHECK(same_word(parts[1], q));
        CHECK(same_word(canonical(p), p));
    }
}

TEST_CASE("membership agrees with the naive reference")
{
    Rng rng(2);
    for (int round = 0; round < 200; ++round) {
        const auto a = testing::random_automaton(rng, testing::uniform(rng, 1, 5), AB);
        for (int i = 0; i < 30; ++i) {
            const LassoWord w = testing::random_lasso(rng, AB, 1, 3, 3);
            CHECK(accepts(a, w) == testing::naive_accepts(a, w));
        }
        const auto g = testing::random_gba(rng, testing::uniform(rng, 1, 4), testing::uniform(rng, 0, 3), AB);
        for (int i = 0; i < 30; ++i) {
            const LassoWord w = testing::random_lasso(rng, AB, 1, 3, 3);
            CHECK(accepts(g, w) == testing::naive_accepts(g, w));
        }
    }
}

TEST_CASE("emptiness returns accepted witnesses")
{
    Rng rng(4);
    int nonempty = 0;
    for (int round = 0; round < 400; ++round) {
        const auto a = testing::random_automaton(rng, testing::uniform(rng, 1, 6), AB, 1, 0.3, 0.3);
        const auto w = is_empty(a);
        CHECK(w.has_value() == naive_nonempty(a));
        if (w) {
            ++nonempty;
            CHECK(testing::naive_accepts(a, *w));
        }
    }
    CHECK(nonempty > 50);
    CHECK(nonempty < 390);
}

TEST_CASE("intersection")
{
    Rng rng(5);
    for (int round = 0; round < 150; ++round) {
        const auto a = testing::random_automaton(rng, testing::uniform(rng, 1, 4), AB);
        auto b = testing::random_automaton(rng, testing::uniform(rng, 1, 4), {"b", "c"});
        if (round % 3 == 0)
            for (StateId q = 0; q < b.num_states(); ++q)
                b.set_accepting(q, true);
        const auto p = intersect(a, b);
        CHECK(p.atoms() == std::vector<std::string>{"a", "b", "c"});
        for (int i = 0; i < 30; ++i) {
            const LassoWord w = testing::random_lasso(rng, {"a", "b", "c"}, 1, 3, 3);
            CHECK(accepts(p, w) == (testing::naive_accepts(a, w) && testing::naive_accepts(b, w)));
        }
    }
}

TEST_CASE("self composition")
{
    Rng rng(6);
    for (int round = 0; round < 100; ++round) {
        auto a = testing::random_automaton(rng, testing::uniform(rng, 1, 4), AB);
        if (round % 2 == 0)
            for (StateId q = 0; q < a.num_states(); ++q)
                a.set_accepting(q, true);
        const auto s = self_compose(a, 2);
        CHECK(s.arity() == 2);
        for (int i = 0; i < 30; ++i) {
            const LassoWord x = testing::random_lasso(rng, AB, 1, 2, 3), y = testing::random_lasso(rng, AB, 1, 2, 3);
            CHECK(accepts(s, pair_word(x, y)) == (testing::naive_accepts(a, x) && testing::naive_accepts(a, y)));
        }
    }
}

TEST_CASE("projection and atom hiding are existential")
{
    Rng rng(8);
    for (int round = 0; round < 100; ++round) {
        const auto a = testing::random_automaton(rng, testing::uniform(rng, 1, 4), AB, 2);
        const auto p = project(a, 1);
        const auto h = restrict_atoms(a, {"a"});
        CHECK(p.arity() == 1);
        CHECK(h.atoms() == std::vector<std::string>{"a"});
        CHECK(is_empty(p).has_value() == is_empty(a).has_value());
        CHECK(is_empty(h).has_value() == is_empty(a).has_value());
        for (int i = 0; i < 30; ++i) {
            const LassoWord w = testing::random_lasso(rng, AB, 2, 2, 3);
            if (!testing::naive_accepts(a, w))
                continue;
            CHECK(accepts(p, unzip(w)[0]));
            CHECK(accepts(h, with_atoms(w, {"a"})));
        }
        if (const auto w = is_empty(p)) {
            CHECK(testing::naive_accepts(p, *w));
        }
    }
}

TEST_CASE("trim, quotient and degeneralization preserve the language")
{
    Rng rng(9);
    for (int round = 0; round < 150; ++round) {
        const auto a = testing::random_automaton(rng, testing::uniform(rng, 1, 6), AB);
        const auto t = trim(a), q = bisimulation_quotient(a);
        CHECK(t.num_states() <= a.num_states());
        CHECK(q.num_states() <= a.num_states());
        const auto g = testing::random_gba(rng, testing::uniform(rng, 1, 4), testing::uniform(rng, 0, 3), AB);
        const auto d = degeneralize(g);
        for (int i = 0; i < 30; ++i) {
            const LassoWord w = testing::random_lasso(rng, AB, 1, 3, 3);
            const bool in_a = testing::naive_accepts(a, w);
            CHECK(testing::naive_accepts(t, w) == in_a);
            CHECK(testing::naive_accepts(q, w) == in_a);
            CHECK(testing::naive_accepts(d, w) == testing::naive_accepts(g, w));
        }
    }
}

TEST_CASE("trim drops useless states")
{
    BuchiAutomaton a(1, AB);
    const auto s0 = a.add_state(false, "s0");
    const auto s1 = a.add_state(true, "s1");
    const auto dead = a.add_state(false, "dead");
    a.add_state(true, "unreachable");
    a.add_initial(s0);
    a.add_edge(s0, Letter(1), s1);
    a.add_edge(s1, Letter(1), s1);
    a.add_edge(s0, Letter(1), dead);
    const auto t = trim(a);
    CHECK(t.num_states() == 2);
    CHECK(t.num_edges() == 2);
}

TEST_CASE("dot output")
{
    BuchiAutomaton a(1, AB);
    a.add_state(true, "q");
    a.add_initial(0);
    Letter l(1);
    l.components[0].pos = 1;
    a.add_edge(0, l, 0);
    const std::string dot = to_dot(a, "T");
    CHECK(dot.rfind("digraph \"T\" {\n  rankdir=LR;", 0) == 0);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("+a") != std::string::npos);
    CHECK(dot.find("init0") != std::string::npos);
}

TEST_CASE("letters are validated against the automaton")
{
    BuchiAutomaton a(1, AB);
    a.add_state();
    CHECK_THROWS_AS(a.add_edge(0, Letter(2), 0), ArityMismatch);
    // bits beyond the atom list are ignored
    Letter far(1);
    far.components[0].pos = AtomSet{1} << 5;
    a.add_edge(0, far, 0);
    CHECK(a.edges(0).at(0).letter == Letter(1));
    Rng rng(1);
    CHECK_THROWS(self_compose(testing::random_automaton(rng, 2, AB, 2), 2));
}

TEST_CASE("simulation reduction preserves the language")
{
    Rng rng(10);
    std::size_t before = 0, after = 0;
    for (int round = 0; round < 200; ++round) {
        const auto a = testing::random_automaton(rng, testing::uniform(rng, 1, 7), AB, 1, 0.4, 0.5);
        const auto r = simulation_reduce(a);
        before += trim(a).num_states();
        after += r.num_states();
        CHECK(r.num_states() <= trim(a).num_states());
        for (int i = 0; i < 30; ++i) {
            const LassoWord w = testing::random_lasso(rng, AB, 1, 3, 3);
            CHECK(testing::naive_accepts(r, w) == testing::naive_accepts(a, w));
        }
    }
    CHECK(after < before);
}
