#pragma once

// Brute-force reference semantics. Every firing set is obtained by listing
// candidate assignments and deciding each one against the definitions; no
// code is shared with the generators of the main path.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "intercon/core.hpp"
#include "intercon/formula.hpp"
#include "intercon/interpretation.hpp"
#include "intercon/locality.hpp"

namespace intercon::oracle {

/// The instance is larger than the oracle agrees to enumerate.
class Refusal : public Error {
 public:
  using Error::Error;
};

struct Limits {
  std::size_t max_ports = 6;
  std::size_t max_data = 3;
  std::size_t max_candidates = 3'000'000;
  std::size_t max_blocks = 8;
};

enum class Semantics { classical, partial, simple, local };

const char* to_string(Semantics s);

enum class Value3 { sat, dissat, undefined };

/// Two-valued truth of ψ under a total σ. Throws PreconditionError when σ or
/// I leave something undefined.
bool classical_value(const Assignment& sigma, const Formula& psi, const Interpretation& interp);

Value3 partial_value(const Assignment& sigma, const Formula& psi, const Interpretation& interp);

/// σ,I ⊨s ψ and σ,I ⫤s ψ, decided for this exact σ. With `rewrite` set, ψ is
/// read as ψ^S.
bool holds(const Assignment& sigma, const Formula& psi, const Interpretation& interp,
           bool rewrite = false);
bool fails(const Assignment& sigma, const Formula& psi, const Interpretation& interp,
           bool rewrite = false);

/// σ ⊨s ψ^S ⩓ SFA(ports) ⩓ (true ⩔ v = v) for the non-flow variables.
bool is_simple_firing(const Assignment& sigma, const Formula& psi, const Interpretation& interp,
                      const std::set<Var>& vars);

std::vector<Assignment> classical_firings(const Formula& psi, const Interpretation& interp,
                                          const Universe& universe,
                                          const std::set<Var>& extra = {},
                                          const Limits& limits = {});
std::vector<Assignment> partial_firings(const Formula& psi, const Interpretation& interp,
                                        const Universe& universe,
                                        const std::set<Var>& extra = {},
                                        const Limits& limits = {});
std::vector<Assignment> simple_firings(const Formula& psi, const Interpretation& interp,
                                       const Universe& universe,
                                       const std::set<Var>& extra = {},
                                       const Limits& limits = {});

/// {σ | σ,I ⊨s ψ} and {σ | σ,I ⫤s ψ} over partial maps on fv(ψ), ψ as written.
std::vector<Assignment> simple_solutions(const Formula& psi, const Interpretation& interp,
                                         const Universe& universe, const Limits& limits = {});
std::vector<Assignment> simple_dissolutions(const Formula& psi, const Interpretation& interp,
                                            const Universe& universe,
                                            const Limits& limits = {});

/// Local firings over every partition of the blocks: each part is either left
/// out or contributes a simple firing of its conjunction that keeps flow off
/// the part's boundary; the contributions must be compatible.
std::vector<Assignment> local_firings(const Configuration& cfg, const Interpretation& interp,
                                      const Universe& universe, const Limits& limits = {});

/// Dispatch on the semantics; `cfg` is used for local, `psi` otherwise.
std::vector<Assignment> firings(Semantics s, const Formula& psi, const Configuration& cfg,
                                const Interpretation& interp, const Universe& universe,
                                const std::set<Var>& extra = {}, const Limits& limits = {});

}  // namespace intercon::oracle
