#include "hyperltl/checker.hpp"
#include "hyperltl/policies.hpp"
#include "hyperltl/tableau.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace hyperltl;

namespace {

/// Program with a secret branch: each of the `width` secret values leads to its own
/// chain of `depth` states; even secrets publish l once.
KripkeStructure branching_program(std::size_t width, std::size_t depth)
{
    KripkeStructure k;
    k.aps = {"h", "l"};
    k.add_state("init");
    for (std::size_t b = 0; b < width; ++b) {
        std::size_t prev = 0;
        for (std::size_t d = 0; d < depth; ++d) {
            std::set<std::string> label;
            if (d == 0 && b % 2 == 1)
                label.insert("h");
            if (d + 1 == depth && b % 2 == 0)
                label.insert("l");
            const std::size_t s = k.add_state("b" + std::to_string(b) + "_" + std::to_string(d), label);
            k.add_transition(prev, s);
            prev = s;
        }
        k.add_transition(prev, prev);
    }
    return k;
}

KripkeStructure random_structure(std::size_t states, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    KripkeStructure k;
    k.aps = {"h", "l"};
    for (std::size_t s = 0; s < states; ++s) {
        std::set<std::string> label;
        if (rng() & 1)
            label.insert("h");
        if (rng() & 1)
            label.insert("l");
        k.add_state("s" + std::to_string(s), label);
    }
    for (std::size_t s = 0; s < states; ++s) {
        k.add_transition(s, rng() % states);
        k.add_transition(s, rng() % states);
    }
    return k;
}

void run_check(benchmark::State& state, const KripkeStructure& k, const Formula& phi)
{
    std::size_t largest = 0;
    for (auto _ : state) {
        const Verdict v = check(k, phi);
        for (const auto& s : v.stages)
            largest = std::max(largest, s.size.states);
        benchmark::DoNotOptimize(v.outcome);
    }
    state.counters["kripke_states"] = static_cast<double>(k.num_states());
    state.counters["largest_stage"] = static_cast<double>(largest);
}

void BM_ObservationalDeterminism(benchmark::State& state)
{
    const auto k = branching_program(static_cast<std::size_t>(state.range(0)), 3);
    run_check(state, k, observational_determinism({}, {"l"}));
}
BENCHMARK(BM_ObservationalDeterminism)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Noninference(benchmark::State& state)
{
    const auto k = random_structure(static_cast<std::size_t>(state.range(0)), 7);
    run_check(state, k, noninference({"h"}, {"l"}));
}
BENCHMARK(BM_Noninference)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_GeneralizedNoninterference(benchmark::State& state)
{
    const auto k = random_structure(static_cast<std::size_t>(state.range(0)), 11);
    run_check(state, k, generalized_noninterference({"h"}, {"l"}));
}
BENCHMARK(BM_GeneralizedNoninterference)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_FormulaAutomaton(benchmark::State& state)
{
    const Formula body = split_prenex(quantitative_ni(static_cast<std::size_t>(state.range(0)), {}, {"o"})).body;
    std::vector<std::string> vars;
    for (const auto& q : split_prenex(quantitative_ni(static_cast<std::size_t>(state.range(0)), {}, {"o"})).prefix)
        vars.push_back(q.var);
    const Formula psi = to_nnf(Formula::negation(body));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_formula_automaton(psi, vars, {"o"}).num_states());
}
BENCHMARK(BM_FormulaAutomaton)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Complement(benchmark::State& state)
{
    std::mt19937_64 rng(static_cast<std::uint64_t>(state.range(0)));
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    BuchiAutomaton a(1, {"a"});
    for (std::size_t s = 0; s < n; ++s)
        a.add_state(s % 2 == 0);
    a.add_initial(0);
    for (StateId s = 0; s < n; ++s) {
        a.add_edge(s, Letter(1), static_cast<StateId>((s + 1) % n)); // keeps every state live
        for (StateId t = 0; t < n; ++t)
            if (rng() % 3 == 0) {
                Letter l(1);
                (rng() & 1 ? l.components[0].pos : l.components[0].neg) = 1;
                a.add_edge(s, l, t);
            }
    }
    std::size_t macro = 0;
    for (auto _ : state) {
        ComplementStats stats;
        benchmark::DoNotOptimize(complement(a, {}, &stats).num_states());
        macro = stats.macrostates;
    }
    state.counters["macrostates"] = static_cast<double>(macro);
}
BENCHMARK(BM_Complement)->DenseRange(2, 6, 1)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
