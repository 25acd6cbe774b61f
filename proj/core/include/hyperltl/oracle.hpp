#pragma once

// Brute-force semantics on ultimately periodic traces. Shares no code with the
// automata pipeline so it can serve as a reference in tests and as a validator
// of counterexamples.

#include "hyperltl/automata.hpp"
#include "hyperltl/formula.hpp"
#include "hyperltl/kripke.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace hyperltl {

/// Trace variable -> arity-1 lasso word.
using TraceAssignment = std::map<std::string, LassoWord>;

/// Π ⊨ ψ for a quantifier-free ψ (sugar allowed). Atoms missing from a word are false.
bool eval_qf(const Formula& psi, const TraceAssignment& pi);

/// φ evaluated with trace quantifiers ranging over `traces`. φ must be prenex.
bool eval_closed(const Formula& phi, const std::vector<LassoWord>& traces, const TraceAssignment& pi = {});

/// Label lassos of K-paths from the initial state with stem length <= stem_bound and
/// cycle length <= cycle_bound, canonicalized and deduplicated. Throws
/// ResourceLimitExceeded beyond max_paths explored paths.
std::vector<LassoWord> enumerate_lassos(const KripkeStructure& k, std::size_t stem_bound, std::size_t cycle_bound,
                                        std::size_t max_paths = 2'000'000);

/// Whether some path of K from the initial state produces w, comparing only the
/// propositions that K and w have in common.
bool is_trace_of(const KripkeStructure& k, const LassoWord& w);

} // namespace hyperltl
