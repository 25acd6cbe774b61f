#include <doctest.h>

#include "hyperltl/error.hpp"
#include "hyperltl/kripke.hpp"
#include "hyperltl/oracle.hpp"
#include "testing.hpp"

using namespace hyperltl;
using testing::Rng;

namespace {

const char* kSmall = R"(# two-state toggle
aps: a b
states: s0 s1
init: s0
label s0:
label s1: a b
trans s0 -> s1
trans s1 -> s0 s1
)";

} // namespace

TEST_CASE("parse and print a structure")
{
    const KripkeStructure k = parse_kripke(kSmall);
    CHECK(k.aps == std::vector<std::string>{"a", "b"});
    CHECK(k.states == std::vector<std::string>{"s0", "s1"});
    CHECK(k.initial == 0);
    CHECK(k.labels[1] == std::set<std::string>{"a", "b"});
    CHECK(k.successors[1] == std::vector<std::size_t>{0, 1});

    const KripkeStructure again = parse_kripke(to_text(k));
    CHECK(again.states == k.states);
    CHECK(again.labels == k.labels);
    CHECK(again.successors == k.successors);
    CHECK(again.initial == k.initial);
}

TEST_CASE("parse errors carry positions")
{
    CHECK_THROWS_AS(parse_kripke("aps: a\nstates: s\ninit: s\nlabel s: a\n"), ValidationError);
    CHECK_THROWS_AS(parse_kripke("aps: a\nstates: s\ninit: s\nlabel s: c\ntrans s -> s\n"), ValidationError);
    CHECK_THROWS_AS(parse_kripke("aps: a\nstates: s\ninit: t\nlabel s:\ntrans s -> s\n"), ValidationError);
    try {
        parse_kripke("aps: a\nstates: s\nbogus s\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    try {
        parse_kripke("aps: a\nstates: s\ninit: s\nlabel s:\ntrans s -> t\n");
        FAIL("expected an error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("'t'") != std::string::npos);
    }
    CHECK_THROWS_AS(load_kripke(testing::data_path("does-not-exist.ks")), Error);
}

TEST_CASE("validation names the offending state")
{
    KripkeStructure k;
    k.aps = {"a"};
    k.add_state("x", {"a"});
    k.add_state("y");
    k.add_transition(0, 1);
    try {
        k.validate();
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("state y has no successors") != std::string::npos);
    }
    k.add_transition(1, 1);
    CHECK_NOTHROW(k.validate());
    k.labels[1].insert("zz");
    CHECK_THROWS_AS(k.validate(), ValidationError);
}

TEST_CASE("kripke_to_buchi accepts exactly the traces")
{
    Rng rng(3);
    for (int round = 0; round < 60; ++round) {
        const KripkeStructure k = testing::random_kripke(rng, testing::uniform(rng, 1, 4), {"a", "b"});
        const BuchiAutomaton a = kripke_to_buchi(k);
        CHECK(a.num_states() == k.num_states() + 1);
        for (StateId q = 0; q < a.num_states(); ++q)
            CHECK(a.is_accepting(q));
        for (int i = 0; i < 40; ++i) {
            const LassoWord w = testing::random_lasso(rng, {"a", "b"}, 1, 3, 3);
            const bool truth = is_trace_of(k, w);
            CHECK(accepts(a, w) == truth);
            CHECK(testing::naive_accepts(a, w) == truth);
        }
    }
}

TEST_CASE("extra propositions are unconstrained")
{
    const KripkeStructure k = parse_kripke(kSmall);
    const BuchiAutomaton a = kripke_to_buchi(k, {"c"});
    CHECK(a.atoms() == std::vector<std::string>{"a", "b", "c"});
    const std::vector<std::string> atoms{"a", "b", "c"};
    CHECK(accepts(a, testing::word(atoms, {{"c"}}, {{"a", "b"}})));
    CHECK(accepts(a, testing::word(atoms, {{}}, {{"a", "b", "c"}, {"a", "b"}})));
    CHECK_FALSE(accepts(a, testing::word(atoms, {{"a"}}, {{"a", "b"}})));
    CHECK_THROWS_AS(kripke_to_buchi(k, {"a"}), ValidationError);
}

TEST_CASE("state machine encoding")
{
    StateMachine m;
    m.states = {"lo", "hi"};
    m.users = {"H", "L"};
    m.commands = {"set", "nop"};
    m.outputs = {"0", "1"};
    m.resize_tables();
    m.next[0][0][0] = 1; // H.set: lo -> hi
    m.observe[1][1] = 1; // L sees 1 in hi
    m.observe[1][0] = 1;

    const KripkeStructure k = encode_state_machine(m);
    CHECK(k.num_states() == 1 + 2 * 2 * 2);
    CHECK(k.states[0] == "lo");
    CHECK(k.labels[0] == std::set<std::string>{"out_H_0", "out_L_0"});
    CHECK(input_atom("H", "set") == "in_H_set");
    CHECK(output_atom("L", "1") == "out_L_1");

    const std::size_t hi_h_set = k.index_of("hi.H.set");
    CHECK(k.labels[hi_h_set] == std::set<std::string>{"in_H_set", "out_H_1", "out_L_1"});
    // from the initial state, H.set moves to hi; everything else stays in lo
    std::set<std::string> succ;
    for (auto t : k.successors[0])
        succ.insert(k.states[t]);
    CHECK(succ == std::set<std::string>{"hi.H.set", "lo.H.nop", "lo.L.set", "lo.L.nop"});
    // hi is absorbing
    for (auto t : k.successors[hi_h_set])
        CHECK(k.states[t].rfind("hi.", 0) == 0);

    m.next[0][0].pop_back();
    CHECK_THROWS_AS(encode_state_machine(m), ValidationError);
}

TEST_CASE("test data files load")
{
    for (const char* name : {"prog1.ks", "prog2.ks", "const.ks"})
        CHECK_NOTHROW(load_kripke(testing::data_path(name)));
}
