#include <doctest.h>

#include "hyperltl/error.hpp"
#include "hyperltl/oracle.hpp"
#include "testing.hpp"

using namespace hyperltl;
using testing::word;

namespace {

const std::vector<std::string> A{"a"};

bool holds(const char* text, const LassoWord& w) { return eval_qf(parse_formula(text), {{"p", w}}); }

} // namespace

TEST_CASE("temporal operators on a lasso")
{
    // a, then (!a a)^ω
    const LassoWord w = word(A, {{"a"}}, {{}, {"a"}});
    CHECK(holds("a[p]", w));
    CHECK_FALSE(holds("X a[p]", w));
    CHECK(holds("X X a[p]", w));
    CHECK(holds("G F a[p]", w));
    CHECK_FALSE(holds("F G a[p]", w));
    CHECK(holds("F !a[p]", w));
    CHECK(holds("a[p] U !a[p]", w));
    CHECK_FALSE(holds("G a[p]", w));
    CHECK(holds("false R true", w));
    CHECK(holds("!a[p] W a[p]", w));
    CHECK(holds("a[p] W false", word(A, {}, {{"a"}})));
    CHECK_FALSE(holds("a[p] U false", word(A, {}, {{"a"}})));
    CHECK(holds("a[p] -> X !a[p]", w));
    CHECK(holds("a[p] <-> X X a[p]", w));
}

TEST_CASE("comparisons between traces")
{
    const LassoWord x = word(A, {{"a"}}, {{}}), y = word(A, {}, {{"a"}, {}}), z = word(A, {}, {{"a"}});
    auto eval = [](const char* text, const LassoWord& p, const LassoWord& q) {
        return eval_qf(parse_formula(text), {{"p", p}, {"q", q}});
    };
    CHECK_FALSE(eval("p ={a} q", x, y));
    CHECK(eval("p !={a} q", x, y));
    CHECK(eval("p ={a} q", y, word(A, {{"a"}, {}}, {{"a"}, {}})));
    CHECK(eval("a[p] & a[q] & X (a[p] <-> a[q])", x, y));
    CHECK_FALSE(eval("G (a[p] -> a[q])", z, x));
    CHECK(eval("G (a[p] -> a[q])", x, z));
}

TEST_CASE("missing atoms read as false")
{
    CHECK_FALSE(holds("F b[p]", word(A, {}, {{"a"}})));
    CHECK(holds("G !b[p]", word(A, {}, {{"a"}})));
}

TEST_CASE("closed formulas over a trace set")
{
    const std::vector<LassoWord> traces{word(A, {}, {{}}), word(A, {{}}, {{"a"}})};
    CHECK(eval_closed(parse_formula("exists p. F a[p]"), traces));
    CHECK_FALSE(eval_closed(parse_formula("forall p. F a[p]"), traces));
    CHECK(eval_closed(parse_formula("forall p. exists q. !a[p] -> F a[q]"), traces));
    CHECK_FALSE(eval_closed(parse_formula("forall p. forall q. p ={a} q"), traces));
    CHECK(eval_closed(parse_formula("exists p. forall q. G (a[q] -> a[p])"), traces));
}

TEST_CASE("lasso enumeration of a structure")
{
    const KripkeStructure k = load_kripke(testing::data_path("prog1.ks"));
    const auto lassos = enumerate_lassos(k, 4, 2);
    // prog1 has exactly two traces: s0 q0^ω and s0 q1 q2^ω
    CHECK(lassos.size() == 2);
    const std::vector<std::string> hl{"h", "l"};
    for (const auto& w : lassos) {
        CHECK(is_trace_of(k, w));
        CHECK((same_word(w, word(hl, {}, {{}})) || same_word(w, word(hl, {{}, {"h"}}, {{"h", "l"}}))));
    }
    CHECK(enumerate_lassos(k, 0, 1).empty()); // bounds apply to paths, not to the canonical words
    CHECK(enumerate_lassos(k, 1, 1).size() == 1);
    CHECK_THROWS_AS(enumerate_lassos(k, 4, 2, 1), ResourceLimitExceeded);
}

TEST_CASE("trace membership")
{
    const KripkeStructure k = load_kripke(testing::data_path("prog2.ks"));
    const std::vector<std::string> hl{"h", "l"};
    CHECK(is_trace_of(k, word(hl, {{}, {}}, {{"l"}})));
    CHECK(is_trace_of(k, word(hl, {{}, {"h"}}, {{"h"}})));
    CHECK_FALSE(is_trace_of(k, word(hl, {{}, {}}, {{"h"}})));
    CHECK_FALSE(is_trace_of(k, word(hl, {{"h"}}, {{"h"}})));
    // propositions outside the structure are ignored
    CHECK(is_trace_of(k, word({"l", "z"}, {{"z"}, {}}, {{"l", "z"}})));
}

TEST_CASE("enumeration is complete for small random structures")
{
    testing::Rng rng(31);
    const std::vector<std::string> aps{"a", "b"};
    for (int round = 0; round < 40; ++round) {
        const KripkeStructure k = testing::random_kripke(rng, testing::uniform(rng, 1, 3), aps);
        // the word × structure product has at most 6 nodes, so its lassos fit in 6 + 6
        const auto lassos = enumerate_lassos(k, 6, 6);
        for (const auto& w : testing::all_lassos(aps, 1, 1, 1)) {
            if (!is_trace_of(k, w))
                continue;
            bool found = false;
            for (const auto& v : lassos)
                found = found || same_word(v, w);
            CHECK(found);
        }
    }
}
