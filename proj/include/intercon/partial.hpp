#pragma once

// Three-valued satisfaction over partial assignments and the meta-flow axiom.

#include <set>
#include <vector>

#include "intercon/core.hpp"
#include "intercon/formula.hpp"
#include "intercon/interpretation.hpp"

namespace intercon {

enum class Truth3 { sat, dissat, undefined };

const char* to_string(Truth3 t);

/// ⊨p / ⫤p. Both conjunctions behave as the single conjunction of partial
/// logic. Throws PreconditionError if σ binds NOFLOW.
Truth3 partial_eval(const Assignment& sigma, const Interpretation& interp, const Formula& psi,
                    Lookup lookup = Lookup::resolve);

/// σ(x̂) ≠ ⊥ implies σ(x) = true, for every bound x̂.
bool mfa_check(const Assignment& sigma);

/// All partial assignments over fv(ψ) ∪ extra (closed under x / x̂) with
/// partial_eval = sat that obey the meta-flow axiom.
std::vector<Assignment> enumerate_partial_firings(const Formula& psi, const Interpretation& interp,
                                                  const Universe& universe,
                                                  const std::set<Var>& extra = {});

}  // namespace intercon
