#pragma once

// Configurations of blocks, boundaries, the no-flow axiom and local firings.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "intercon/core.hpp"
#include "intercon/formula.hpp"
#include "intercon/interpretation.hpp"
#include "intercon/simple.hpp"

namespace intercon {

struct Block {
  std::string id;
  Formula formula;
  std::set<std::string> owners;
  std::set<Var> free;
};

Block make_block(std::string id, Formula formula, std::set<std::string> owners = {});

using Configuration = std::vector<Block>;

/// Only sync variables, all false.
bool is_no_flow(const Assignment& sigma);

/// A no-flow assignment that may also pin current-state variables. Stateful
/// blocks can only be solved together with their ephemeral `state.p = q`, so
/// this is their "do nothing" shape.
bool is_idle(const Assignment& sigma);

/// Number of sync variables that σᴾ maps to true.
std::size_t flow(const Assignment& sigma);

/// Some idle assignment over the block's variables is a simple firing of it.
/// Tries cached external entries first and only then resolves.
bool check_no_flow_axiom(const Block& block, const Interpretation& interp,
                         const Universe& universe);

/// Variables shared by the blocks at `cells` and the remaining blocks.
std::set<Var> boundary(const Configuration& cfg, const std::set<std::size_t>& cells);

/// True iff σᴾ(x) ≠ true for every sync variable x in `bnd`.
bool boundary_ok(const Assignment& sigma, const std::set<Var>& bnd);

/// Overlapping conjunction of the formulas of the given blocks.
Formula merged_formula(const Configuration& cfg, const std::set<std::size_t>& cells);

/// Simple firings of the merged block that satisfy the boundary condition.
std::vector<Assignment> local_firings_block(const Configuration& cfg,
                                            const std::set<std::size_t>& cells,
                                            const Interpretation& interp,
                                            const Universe& universe,
                                            Lookup lookup = Lookup::resolve);

struct Region {
  std::vector<std::size_t> blocks;
  Assignment assignment;
};

struct LocalFiring {
  Assignment assignment;
  std::vector<std::size_t> touched;  // block indices in configuration order
  std::vector<Region> regions;
};

/// Every local firing of the configuration: unions of local firings over
/// collections of pairwise disjoint merged blocks, the empty collection
/// included. Exponential; refuses configurations of more than 12 blocks.
std::vector<Assignment> enumerate_local_firings(const Configuration& cfg,
                                                const Interpretation& interp,
                                                const Universe& universe);

enum class MergePolicy { first, max };

struct SearchOptions {
  MergePolicy policy = MergePolicy::max;
  std::size_t max_region = 0;  // 0: no limit
};

/// Region-growing search for one local firing. Regions start as single
/// blocks in configuration order and absorb the unclaimed neighbours that a
/// boundary violation asks for. An all-idle configuration yields an empty
/// firing with nothing touched.
LocalFiring find_local_firing(const Configuration& cfg, const Interpretation& interp,
                              const Universe& universe, const SearchOptions& opts = {});

/// σ⋆ ⊇ σ obtained by adding, for every block outside `touched`, an idle
/// simple firing of that block compatible with everything chosen so far.
std::optional<Assignment> extend_to_global(const Assignment& sigma,
                                           const std::vector<std::size_t>& touched,
                                           const Configuration& cfg,
                                           const Interpretation& interp,
                                           const Universe& universe);

}  // namespace intercon
