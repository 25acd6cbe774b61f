#include <doctest.h>

#include "hyperltl/automata.hpp"
#include "hyperltl/error.hpp"
#include "testing.hpp"

using namespace hyperltl;
using testing::Rng;

namespace {

const std::vector<std::string> AB{"a", "b"};

void check_complement(Rng& rng, const BuchiAutomaton& a, int samples)
{
    ComplementStats stats;
    const BuchiAutomaton c = complement(a, {}, &stats);
    CHECK(stats.input_states <= a.num_states());
    for (int i = 0; i < samples; ++i) {
        const LassoWord w = testing::random_lasso(rng, a.atoms(), a.arity(), 3, 3);
        INFO(w.to_string());
        CHECK(testing::naive_accepts(a, w) != testing::naive_accepts(c, w));
    }
}

} // namespace

TEST_CASE("complement of all-accepting automata")
{
    Rng rng(12);
    for (int round = 0; round < 150; ++round) {
        auto a = testing::random_automaton(rng, testing::uniform(rng, 1, 5), AB);
        for (StateId q = 0; q < a.num_states(); ++q)
            a.set_accepting(q, true);
        check_complement(rng, a, 50);
    }
}

TEST_CASE("complement of general automata")
{
    Rng rng(13);
    for (int round = 0; round < 150; ++round) {
        const auto a = testing::random_automaton(rng, testing::uniform(rng, 1, 4), AB);
        check_complement(rng, a, 50);
    }
}

TEST_CASE("complement of tuple automata")
{
    Rng rng(14);
    for (int round = 0; round < 40; ++round) {
        const auto a = testing::random_automaton(rng, testing::uniform(rng, 1, 3), {"a"}, 2);
        check_complement(rng, a, 50);
    }
}

TEST_CASE("classic examples")
{
    // F G a: complement is G F !a
    BuchiAutomaton fga(1, {"a"});
    fga.add_state(false);
    fga.add_state(true);
    fga.add_initial(0);
    Letter any(1), a(1);
    a.components[0].pos = 1;
    fga.add_edge(0, any, 0);
    fga.add_edge(0, a, 1);
    fga.add_edge(1, a, 1);
    const auto c = complement(fga);
    const std::vector<std::string> A{"a"};
    CHECK(accepts(c, testing::word(A, {{"a"}}, {{"a"}, {}})));
    CHECK(accepts(c, testing::word(A, {}, {{}})));
    CHECK_FALSE(accepts(c, testing::word(A, {{}, {}}, {{"a"}})));

    // the empty automaton's complement is universal
    BuchiAutomaton none(1, {"a"});
    none.add_state(false);
    none.add_initial(0);
    const auto all = complement(none);
    CHECK(accepts(all, testing::word(A, {}, {{"a"}})));
    CHECK(accepts(all, testing::word(A, {{"a"}}, {{}})));
}

TEST_CASE("guided complement matches the unguided construction")
{
    Rng rng(15);
    for (int round = 0; round < 120; ++round) {
        const auto a = testing::random_automaton(rng, testing::uniform(rng, 1, 4), AB);
        auto guide = testing::random_automaton(rng, testing::uniform(rng, 1, 3), AB, 1, 0.5, 1.0);
        if (round % 4 == 0)
            guide.set_accepting(0, false);
        const auto guided = complement_intersect(a, guide);
        for (int i = 0; i < 40; ++i) {
            const LassoWord w = testing::random_lasso(rng, AB, 1, 3, 3);
            const bool expected = !testing::naive_accepts(a, w) && testing::naive_accepts(guide, w);
            CHECK(testing::naive_accepts(guided, w) == expected);
        }
    }
}

TEST_CASE("guide restricts exploration")
{
    Rng rng(16);
    const auto a = testing::random_automaton(rng, 3, {"a", "b", "c", "d"});
    BuchiAutomaton guide(1, {"a", "b", "c", "d"});
    guide.add_state(true);
    guide.add_initial(0);
    guide.add_edge(0, Letter::exactly(Symbol{0}, 4), 0);
    ComplementStats guided, plain;
    complement_intersect(a, guide, {}, &guided);
    complement(a, {}, &plain);
    CHECK(guided.macrostates <= plain.macrostates);
}

TEST_CASE("resource limits")
{
    Rng rng(17);
    BuchiAutomaton a(2, {"a", "b", "c", "d", "e", "f", "g"});
    a.add_state(true);
    a.add_initial(0);
    a.add_edge(0, Letter(2), 0);
    ComplementOptions small;
    small.max_alphabet = 16;
    CHECK_THROWS_AS(complement(a, small), ResourceLimitExceeded);

    const auto b = testing::random_automaton(rng, 6, AB, 1, 0.6, 0.5);
    ComplementOptions tiny;
    tiny.max_states = 1;
    CHECK_THROWS_AS(complement(b, tiny), ResourceLimitExceeded);
}
