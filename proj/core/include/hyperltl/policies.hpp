#pragma once

// Information-flow policy templates. Equalities over an empty proposition set
// are `true` and are dropped from conjunctions and antecedents.

#include "hyperltl/formula.hpp"
#include "hyperltl/kripke.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace hyperltl {

using AtomList = std::vector<std::string>;

/// forall p. exists q. G (no high input on q) & G (low agrees on p, q).
/// The dummy input is encoded as "every atom of high_in is false".
Formula noninference(const AtomList& high_in, const AtomList& low, std::vector<std::string>* warnings = nullptr);

/// forall p. forall q. (low inputs agree initially) -> G (low outputs agree).
Formula observational_determinism(const AtomList& low_in, const AtomList& low_out);

/// forall p. forall q. exists r. G (high agrees on p, r) & G (low agrees on q, r).
Formula generalized_noninterference(const AtomList& high_in, const AtomList& low);

/// Observational determinism that tolerates a difference in `pw` at the second position.
Formula declassification_password(const AtomList& low_in, const std::string& pw, const AtomList& low_out);

/// No 2^n_bits + 1 traces with equal low inputs and pairwise different low outputs,
/// as a purely universal formula over p0 .. p{2^n_bits}.
Formula quantitative_ni(std::size_t n_bits, const AtomList& low_in, const AtomList& low_out,
                        std::vector<std::string>* warnings = nullptr);

/// Noninterference of users G_H with users G_L for the encoding produced by
/// encode_state_machine (propositions in_u_c / out_u_v).
Formula gm_noninterference(const AtomList& high_users, const AtomList& low_users, const StateMachine& signature,
                           std::vector<std::string>* warnings = nullptr);

} // namespace hyperltl
