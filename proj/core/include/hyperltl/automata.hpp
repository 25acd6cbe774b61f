#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hyperltl {

/// Bit set over the relevant atoms of an automaton or word (bit i = atoms[i]).
using AtomSet = std::uint64_t;
inline constexpr std::size_t max_atoms = 64;

/// Concrete letter: one atom set per tuple component.
using Symbol = std::vector<AtomSet>;

using StateId = std::uint32_t;

/// Constraint on one tuple component: atoms in `pos` must hold, atoms in `neg` must not.
struct Literal {
    AtomSet pos = 0;
    AtomSet neg = 0;

    bool satisfiable() const noexcept { return (pos & neg) == 0; }
    bool matches(AtomSet v) const noexcept { return (v & pos) == pos && (v & neg) == 0; }

    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Symbolic tuple letter. Stands for every concrete symbol whose components
/// satisfy the per-component literals.
struct Letter {
    std::vector<Literal> components;

    Letter() = default;
    explicit Letter(std::size_t arity) : components(arity) {}
    /// The single concrete symbol, fully constrained over `num_atoms` atoms.
    static Letter exactly(const Symbol& s, std::size_t num_atoms);

    std::size_t arity() const noexcept { return components.size(); }
    bool satisfiable() const noexcept;
    bool matches(const Symbol& s) const noexcept;
    /// Canonical concrete instance: required atoms present, everything else absent.
    Symbol concretize() const;

    /// Conjunction of two letters of equal arity; nullopt when unsatisfiable.
    static std::optional<Letter> conjoin(const Letter& a, const Letter& b);

    /// `(+a -b | +c)`: component 1 requires a and forbids b, component 2 requires c.
    std::string to_string(const std::vector<std::string>& atoms) const;

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Ultimately periodic word stem . cycle^omega over n-tuples of atom sets.
struct LassoWord {
    std::vector<std::string> atoms;
    std::size_t arity = 1;
    std::vector<Symbol> stem;
    std::vector<Symbol> cycle;

    std::size_t length() const noexcept { return stem.size() + cycle.size(); }
    /// Letter at position i of the infinite word.
    const Symbol& at(std::size_t i) const;

    /// `stem = {a,b} {} ; cycle = {a}` (arity 1) or tuples `({a},{})` otherwise.
    std::string to_string() const;
};

/// Throws ValidationError when the cycle is empty or symbol widths disagree with the arity.
void validate(const LassoWord& w);

/// Same word with minimal stem and primitive cycle.
LassoWord canonical(const LassoWord& w);

/// True iff both denote the same infinite word (atoms are compared by name; atoms
/// missing from one side count as absent).
bool same_word(const LassoWord& a, const LassoWord& b);

/// Re-expresses w over another atom list; atoms not in `atoms` are dropped.
LassoWord with_atoms(const LassoWord& w, const std::vector<std::string>& atoms);

LassoWord zip(std::span<const LassoWord> words);
std::vector<LassoWord> unzip(const LassoWord& w);

struct Edge {
    Letter letter;
    StateId target;
};

/// States, edges and initial states shared by both acceptance flavours.
class TransitionGraph {
public:
    TransitionGraph() = default;
    TransitionGraph(std::size_t arity, std::vector<std::string> atoms);

    std::size_t arity() const noexcept { return arity_; }
    const std::vector<std::string>& atoms() const noexcept { return atoms_; }
    /// Index of an atom in atoms(), or -1.
    int atom_index(const std::string& atom) const;

    std::size_t num_states() const noexcept { return edges_.size(); }
    std::size_t num_edges() const noexcept;
    const std::vector<Edge>& edges(StateId s) const { return edges_.at(s); }
    const std::vector<StateId>& initial() const noexcept { return initial_; }
    const std::string& name(StateId s) const { return names_.at(s); }

    void add_initial(StateId s);
    /// Adds the edge unless its letter is unsatisfiable.
    void add_edge(StateId from, Letter letter, StateId to);
    void set_name(StateId s, std::string name) { names_.at(s) = std::move(name); }

protected:
    StateId push_state(std::string name);
    void validate_letter(const Letter& l) const;

    std::size_t arity_ = 1;
    std::vector<std::string> atoms_;
    std::vector<std::vector<Edge>> edges_;
    std::vector<StateId> initial_;
    std::vector<std::string> names_;
};

class BuchiAutomaton : public TransitionGraph {
public:
    using TransitionGraph::TransitionGraph;

    StateId add_state(bool accepting = false, std::string name = {});
    bool is_accepting(StateId s) const { return accepting_.at(s); }
    void set_accepting(StateId s, bool acc) { accepting_.at(s) = acc; }
    bool all_accepting() const;
    std::size_t num_accepting() const;

private:
    std::vector<bool> accepting_;
};

class GeneralizedBuchi : public TransitionGraph {
public:
    using TransitionGraph::TransitionGraph;

    StateId add_state(std::string name = {});
    /// Appends an empty accepting set and returns its index.
    std::size_t add_acceptance_set();
    void add_to_set(std::size_t set, StateId s);

    std::size_t num_sets() const noexcept { return sets_.size(); }
    bool in_set(std::size_t set, StateId s) const { return sets_.at(set).at(s); }

private:
    std::vector<std::vector<bool>> sets_;
};

/// Sizes reported by the pipeline and the CLI.
struct AutomatonSize {
    std::size_t states = 0;
    std::size_t edges = 0;
};
AutomatonSize size_of(const TransitionGraph& a);

// ---------------------------------------------------------------------------
// Constructions

/// n-fold synchronous self-composition of an arity-1 automaton (reachable part).
BuchiAutomaton self_compose(const BuchiAutomaton& a, std::size_t n);

/// Language intersection. Plain product when one side is all-accepting, otherwise
/// the two-copy construction. Atom lists are merged.
BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b);

/// Keeps tuple components 1..k of every letter (existential projection).
BuchiAutomaton project(const BuchiAutomaton& a, std::size_t k);

/// Drops every atom outside `keep` from the letters (existential hiding).
BuchiAutomaton restrict_atoms(const BuchiAutomaton& a, const std::vector<std::string>& keep);

/// Removes states that are unreachable or cannot reach an accepting cycle.
BuchiAutomaton trim(const BuchiAutomaton& a);

/// Quotient by forward bisimulation that respects acceptance.
BuchiAutomaton bisimulation_quotient(const BuchiAutomaton& a);

/// Counter construction: |states| * max(1, m) states.
/// Language-preserving reduction by direct simulation: merges mutually simulating
/// states and drops edges dominated by a more general edge into a simulating
/// state. Inputs with more than max_states states (after trimming) are only trimmed.
BuchiAutomaton simulation_reduce(const BuchiAutomaton& a, std::size_t max_states = 2000);

BuchiAutomaton degeneralize(const GeneralizedBuchi& g);

struct ComplementOptions {
    /// Hard cap on constructed macrostates (ResourceLimitExceeded when hit).
    std::size_t max_states = 200000;
    /// Cap on the number of concrete symbols 2^(arity * |atoms|).
    std::size_t max_alphabet = 1u << 12;
};

struct ComplementStats {
    std::size_t input_states = 0;
    std::size_t alphabet = 0;
    std::size_t macrostates = 0;
    std::size_t max_rank = 0;
    bool safety_shortcut = false;
};

/// Complement over all arity-n words on the automaton's atoms.
///
/// Trims the input, then uses the subset construction when every remaining state
/// is accepting and the rank-based construction (tight level rankings, rotating
/// even-rank breakpoint) otherwise.
BuchiAutomaton complement(const BuchiAutomaton& a, const ComplementOptions& opts = {},
                          ComplementStats* stats = nullptr);

/// complement(a) intersected with `guide`, built on the fly so that only symbols
/// the guide can read are explored. `guide` must have the same arity.
BuchiAutomaton complement_intersect(const BuchiAutomaton& a, const BuchiAutomaton& guide,
                                    const ComplementOptions& opts = {}, ComplementStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Decision procedures

/// Nested depth-first search. Returns an accepted lasso, or nullopt iff the language
/// is empty. Unconstrained atoms in the witness are absent.
std::optional<LassoWord> is_empty(const BuchiAutomaton& a);

/// Membership of an ultimately periodic word.
bool accepts(const BuchiAutomaton& a, const LassoWord& w);
bool accepts(const GeneralizedBuchi& g, const LassoWord& w);

// ---------------------------------------------------------------------------
// Rendering

std::string to_dot(const BuchiAutomaton& a, const std::string& title = "A");
std::string to_dot(const GeneralizedBuchi& g, const std::string& title = "G");

} // namespace hyperltl
