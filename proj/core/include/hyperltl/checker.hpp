#pragma once

#include "hyperltl/automata.hpp"
#include "hyperltl/formula.hpp"
#include "hyperltl/kripke.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hyperltl {

struct CheckOptions {
    ComplementOptions complement;
    /// Greedily shorten counterexamples while they stay in the violating language.
    bool minimize = true;
    /// Called with every intermediate automaton (stage name, automaton).
    std::function<void(const std::string&, const BuchiAutomaton&)> on_stage;
};

struct StageStats {
    std::string name;
    AutomatonSize size;
};

struct Verdict {
    enum class Outcome { Holds, Fails };

    Outcome outcome = Outcome::Holds;
    /// Variables of the leading quantifier block, in prefix order.
    std::vector<std::string> trace_vars;
    /// Fails: one trace per leading universal variable. For ∃-leading formulas
    /// that hold, the traces are a witness instead (traces_are_witness).
    std::vector<LassoWord> traces;
    bool traces_are_witness = false;
    std::vector<std::string> notes;
    std::vector<std::string> warnings;
    std::vector<StageStats> stages;
    ComplementStats complement;
    double seconds = 0;

    bool holds() const noexcept { return outcome == Outcome::Holds; }

    /// `VERDICT: holds|fails`, then `NOTE:` / `WARNING:` lines and one
    /// `TRACE var: stem = ... ; cycle = ...` line per trace.
    std::string to_string() const;
};

/// Decides K ⊨ φ for closed prenex φ with at most one quantifier alternation.
/// Throws UnsupportedFragment outside that fragment and ResourceLimitExceeded when
/// a configured cap is hit.
Verdict check(const KripkeStructure& k, const Formula& phi, const CheckOptions& opts = {});

/// ∀^n ψ: nonemptiness of A^n_K ∩ A_¬ψ.
Verdict check_universal(const KripkeStructure& k, const Formula& phi, const CheckOptions& opts = {});

/// ∀^k ∃^j ψ: emptiness of ((A^n_K ∩ A_ψ)|_k)^C ∩ A^k_K.
Verdict check_forall_exists(const KripkeStructure& k, const Formula& phi, const CheckOptions& opts = {});

struct ValidationOptions {
    /// Lasso bounds are |S| * factor, shrunk until enumeration fits max_paths.
    std::size_t factor = 3;
    std::size_t max_paths = 200'000;
};

struct ValidationReport {
    bool ok = false;
    /// False when the oracle only searched a bounded set of lassos.
    bool exhaustive = true;
    std::string message;
};

/// Checks that every reported trace is a trace of K and that the oracle agrees:
/// the universal body is false on the tuple, or no ∃-extension exists among the
/// bounded K-lassos (for witnesses: the remaining ∀ block holds on them).
ValidationReport validate_counterexample(const KripkeStructure& k, const Formula& phi, const Verdict& v,
                                         const ValidationOptions& opts = {});

} // namespace hyperltl
