#pragma once

// Two-valued semantics over total assignments with NOFLOW.

#include <set>
#include <string>
#include <vector>

#include "intercon/core.hpp"
#include "intercon/formula.hpp"
#include "intercon/interpretation.hpp"

namespace intercon {

/// σ,I ⊨c ψ. Requires σ total on fv(ψ), no external symbols in ψ, and I
/// defined on every ground instance reached; violations throw
/// PreconditionError.
bool classical_sat(const Assignment& sigma, const Interpretation& interp, const Formula& psi);

/// ⋀ over the ports of (¬x ↔ x̂ = NOFLOW). Throws PreconditionError unless
/// the universe is in classical mode.
Formula flow_axiom(const std::set<std::string>& ports, const Universe& universe);

/// All total assignments over fv(ψ) ∪ extra (closed under x / x̂) that
/// satisfy ψ ∧ FA. Variables vary in name order, values in universe order,
/// false before true.
std::vector<Assignment> enumerate_classical_firings(const Formula& psi,
                                                    const Interpretation& interp,
                                                    const Universe& universe,
                                                    const std::set<Var>& extra = {});

/// Enumeration domain shared by the classical and partial enumerators.
std::vector<Var> enumeration_vars(const Formula& psi, const std::set<Var>& extra);

}  // namespace intercon
