#pragma once

// Simple logic: generator-style semantics with overlapping (∧) and additive
// (⩓) conjunction, the simple flow axiom and the ψ^S / ψ^P rewrites.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "intercon/core.hpp"
#include "intercon/formula.hpp"
#include "intercon/interpretation.hpp"

namespace intercon {

/// Deduplicated set of assignments kept in canonical order.
class SolutionSet {
 public:
  SolutionSet() = default;
  explicit SolutionSet(std::vector<Assignment> items);

  bool contains(const Assignment& a) const;
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<Assignment>& items() const { return items_; }

  friend bool operator==(const SolutionSet&, const SolutionSet&) = default;

 private:
  std::vector<Assignment> items_;
};

SolutionSet set_union(const SolutionSet& a, const SolutionSet& b);
SolutionSet set_intersection(const SolutionSet& a, const SolutionSet& b);

struct SimpleCounters {
  std::uint64_t generated = 0;     // assignments produced by the generator
  std::uint64_t split_checks = 0;  // splits examined by the ⫤ overlap clause
};

/// Per-thread counters, for comparing the cost of the simple and partial paths.
SimpleCounters& simple_counters();

/// Generates all σ with σ,I ⊨s ψ. With Lookup::cached_only, external entries
/// that are not in I are treated as unknown instead of being requested.
SolutionSet simple_solutions(const Formula& psi, const Interpretation& interp,
                             const Universe& universe, Lookup lookup = Lookup::resolve);

/// Generates all σ with σ,I ⫤s ψ.
SolutionSet simple_dissolutions(const Formula& psi, const Interpretation& interp,
                                const Universe& universe, Lookup lookup = Lookup::resolve);

/// Decides σ,I ⊨s ψ for one given σ.
bool simple_holds(const Assignment& sigma, const Formula& psi, const Interpretation& interp,
                  const Universe& universe, Lookup lookup = Lookup::resolve);

/// Decides σ,I ⫤s ψ for one given σ.
bool simple_fails(const Assignment& sigma, const Formula& psi, const Interpretation& interp,
                  const Universe& universe, Lookup lookup = Lookup::resolve);

/// true ⩔ x ⩔ ¬x ⩔ (x ∧ x̂=x̂) ⩔ x̂=x̂, conjoined with ∧ over the ports.
Formula sfa(const std::set<std::string>& ports);
Formula sfa(const Formula& psi);

/// SFA over the ports of `vars`, plus (true ⩔ v=v) for every state and
/// communication variable so that their bindings survive the additive
/// conjunction of a firing.
Formula firing_axiom(const std::set<Var>& vars);

/// ψ^S: conjunctions in negative positions become additive.
Formula to_simple(const Formula& psi);

/// ψ^P: every additive conjunction becomes overlapping.
Formula to_partial(const Formula& psi);

/// σ,I ⊨s ψ^S ⩓ firing_axiom(fv(ψ) ∪ extra).
SolutionSet simple_firings(const Formula& psi, const Interpretation& interp,
                           const Universe& universe, const std::set<Var>& extra = {},
                           Lookup lookup = Lookup::resolve);

}  // namespace intercon
