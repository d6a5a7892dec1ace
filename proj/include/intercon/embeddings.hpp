#pragma once

// Maps between the assignment shapes of the classical, partial and simple
// semantics.

#include <optional>
#include <set>

#include "intercon/core.hpp"
#include "intercon/formula.hpp"
#include "intercon/interpretation.hpp"

namespace intercon {

/// σ°: drops every x̂ ↦ NOFLOW binding.
Assignment classical_to_partial(const Assignment& sigma);

/// σ†: total over `vars` (closed under x / x̂). Unbound sync variables become
/// false; an unbound x̂ becomes NOFLOW unless x is true, in which case it gets
/// the universe's default datum.
Assignment partial_to_classical(const Assignment& sigma, const std::set<Var>& vars,
                                const Universe& universe);

/// σᴾ: adds x ↦ true for every bound x̂ with x unbound. Throws
/// PreconditionError if x is bound to false.
Assignment extend_p(const Assignment& sigma);

/// Largest simple firing of ψ contained in σ (ties broken by canonical order),
/// or nullopt when none exists.
std::optional<Assignment> minimize_to_simple(const Assignment& sigma, const Formula& psi,
                                             const Interpretation& interp,
                                             const Universe& universe);

/// True iff I assigns a value to every ground instance of the internal
/// predicates in ψ over the universe (NOFLOW included in classical mode).
bool interpretation_total(const Formula& psi, const Interpretation& interp,
                          const Universe& universe);

}  // namespace intercon
