#pragma once

#include <optional>

#include "intercon/core.hpp"
#include "intercon/formula.hpp"
#include "intercon/interpretation.hpp"

namespace intercon {

enum class Mode { classical, partial };

/// Val_σ,I(t). Undefined when a variable is unbound, a sub-term is undefined,
/// or an external function stays unresolved. In classical mode a NOFLOW
/// argument makes the application NOFLOW.
std::optional<GroundTerm> eval_term(const Assignment& sigma, const Interpretation& interp,
                                    const Term& t, Mode mode = Mode::partial,
                                    Lookup lookup = Lookup::resolve);

}  // namespace intercon
