#pragma once

#include "hyperltl/automata.hpp"
#include "hyperltl/formula.hpp"

#include <set>
#include <string>
#include <vector>

namespace hyperltl {

/// cl(ψ): every subformula of ψ together with its negation (¬¬φ is φ), sorted.
std::vector<Formula> closure(const Formula& psi);

/// A maximal consistent subset of the closure: exactly one of φ / ¬φ per member.
using ConsistentSet = std::set<Formula>;

/// All maximal consistent sets of cl(ψ), in a deterministic order.
std::vector<ConsistentSet> maximal_consistent_sets(const Formula& psi);

/// The generalized automaton before degeneralization. State 0 is the initial
/// state ι (no formulas); state s > 0 corresponds to sets[s].
struct Tableau {
    GeneralizedBuchi automaton;
    std::vector<ConsistentSet> sets;
    /// Until formula owning each acceptance set.
    std::vector<Formula> untils;
};

/// Reachable part of the tableau for a quantifier-free NNF body. Component i of
/// every letter constrains the atoms indexed by trace_vars[i]; `atoms` must list
/// every proposition of ψ (extra atoms stay unconstrained).
Tableau build_tableau(const Formula& psi, const std::vector<std::string>& trace_vars,
                      const std::vector<std::string>& atoms);

/// Degeneralized tableau with states merged when they carry the same obligations
/// for the next position and the same acceptance marks. Same language as
/// degeneralize(build_tableau(...).automaton), usually far fewer states and edges.
BuchiAutomaton build_formula_automaton(const Formula& psi, const std::vector<std::string>& trace_vars,
                                       const std::vector<std::string>& atoms);

} // namespace hyperltl
