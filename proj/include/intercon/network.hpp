#pragma once

// Primitives, ownership and the loaded network that the engine runs.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "intercon/core.hpp"
#include "intercon/formula.hpp"
#include "intercon/interpretation.hpp"
#include "intercon/locality.hpp"

namespace intercon {

/// Declared shape of an external symbol.
struct Signature {
  enum class Kind { pred, fun, constr };
  Kind kind = Kind::pred;
  std::size_t formulas = 0;  // constr: formula parameters
  std::size_t terms = 0;     // constr: term parameters
};

std::string to_string(const Signature& s);

enum class PrimitiveKind { stateless, stateful, external };

const char* to_string(PrimitiveKind k);

struct Primitive {
  std::string id;
  PrimitiveKind kind = PrimitiveKind::stateless;
  std::set<Var> vars;
  Formula rho;  // persistent
  Formula eps;  // ephemeral
  std::set<std::string> owned;  // `@sym` and `$k` keys
  std::string endpoint;
};

/// Owner of every external symbol (`@sym`) and communication variable (`$k`).
using OwnershipMap = std::map<std::string, std::string>;

struct Network {
  std::string name;
  Universe universe;
  Interpretation interp;
  std::vector<Primitive> primitives;
  OwnershipMap ownership;
  std::map<std::string, Signature> externals;  // keyed by symbol without `@`

  const Primitive* find(const std::string& id) const;
  Primitive* find(const std::string& id);
};

/// ⋀ᵢ (state.p = qᵢ → ψᵢ); True for an empty list.
Formula encode_state_machine(const std::string& prim,
                             const std::vector<std::pair<GroundTerm, Formula>>& transitions);

/// (ρ ⩓ firing_axiom(vars)) ∧ ε: the block a primitive contributes.
Formula block_formula(const Primitive& p, const Formula& eps);
Formula block_formula(const Primitive& p);

/// ρ ∧ ε without the firing axiom, for the classical and partial semantics.
Formula plain_formula(const Primitive& p);

/// One block per primitive, owned by that primitive.
Configuration configuration(const Network& net);

/// Checks the shape of ε for the primitive's kind and that fv(ε) ⊆ vars.
/// Returns an empty string when acceptable, a diagnostic otherwise.
std::string check_ephemeral(const Primitive& p, const Formula& eps);

/// Load-time invariants: primitive kinds, fv discipline, ownership totality,
/// default datum, and the no-flow axiom per block. Throws LoadError.
void validate(const Network& net);

/// Classical mode needs internal predicate tables that are total over the
/// universe; throws LoadError naming the first missing entry.
void require_total_tables(const Network& net);

}  // namespace intercon
