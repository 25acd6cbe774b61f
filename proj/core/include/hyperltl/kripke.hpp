#pragma once

#include "hyperltl/automata.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hyperltl {

/// (S, s0, δ, AP, L) with a total transition relation. States are indices into `states`.
struct KripkeStructure {
    std::vector<std::string> aps;
    std::vector<std::string> states;
    std::size_t initial = 0;
    std::vector<std::vector<std::size_t>> successors;
    std::vector<std::set<std::string>> labels;

    std::size_t num_states() const noexcept { return states.size(); }
    /// Index of a state name; throws ValidationError if unknown.
    std::size_t index_of(const std::string& state) const;

    /// Adds a state with the given label and no successors yet; returns its index.
    std::size_t add_state(std::string name, std::set<std::string> label = {});
    void add_transition(std::size_t from, std::size_t to);

    /// Throws ValidationError naming the offending state or proposition.
    void validate() const;
};

/// Line-oriented format:
///
///   aps: a b
///   states: s0 s1
///   init: s0
///   label s0:
///   label s1: a b
///   trans s0 -> s1
///   trans s1 -> s0 s1
///
/// `#` starts a comment. Every state needs exactly one `label` and one `trans` line.
KripkeStructure parse_kripke(std::string_view text);
KripkeStructure load_kripke(const std::string& path);
std::string to_text(const KripkeStructure& k);

/// Büchi automaton (arity 1, all states accepting) for Traces(K, K.AP ∪ extra_aps):
/// an initial state plus one state per Kripke state; the edge into s reads L(s)
/// exactly on K.AP and leaves the extra propositions unconstrained.
BuchiAutomaton kripke_to_buchi(const KripkeStructure& k, const std::vector<std::string>& extra_aps = {});

/// Deterministic state machine with users issuing commands and per-user observations.
struct StateMachine {
    std::vector<std::string> states;
    std::vector<std::string> users;
    std::vector<std::string> commands;
    std::vector<std::string> outputs;
    std::size_t initial = 0;
    /// next[s][u][c] = do(s, u, c)
    std::vector<std::vector<std::vector<std::size_t>>> next;
    /// observe[s][u] = out(s, u), an index into outputs
    std::vector<std::vector<std::size_t>> observe;

    /// Allocates total tables with every transition a self-loop and every output 0.
    void resize_tables();
    void validate() const;
};

std::string input_atom(const std::string& user, const std::string& command);
std::string output_atom(const std::string& user, const std::string& value);

/// {s0} ∪ S×U×C with labels in_u_c for the last command and out_u_v for every
/// user's current observation; (s,u,c) steps to every (do(s,u',c'),u',c').
/// The initial state takes the machine's initial-state name; the others are `s.u.c`.
KripkeStructure encode_state_machine(const StateMachine& m);

} // namespace hyperltl
