#include "intercon/locality.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "intercon/embeddings.hpp"

namespace intercon {

Block make_block(std::string id, Formula formula, std::set<std::string> owners) {
  Block b{std::move(id), std::move(formula), std::move(owners), {}};
  b.free = free_vars(b.formula);
  return b;
}

bool is_no_flow(const Assignment& sigma) {
  for (const auto& b : sigma)
    if (!b.var.is_sync() || std::get<bool>(b.value)) return false;
  return true;
}

bool is_idle(const Assignment& sigma) {
  for (const auto& b : sigma) {
    if (b.var.kind == VarKind::state) continue;
    if (!b.var.is_sync() || std::get<bool>(b.value)) return false;
  }
  return true;
}

std::size_t flow(const Assignment& sigma) {
  std::set<std::string> on;
  for (const auto& b : sigma) {
    if (b.var.is_sync() && std::get<bool>(b.value)) on.insert(b.var.name);
    if (b.var.kind == VarKind::dataflow && sigma.sync(b.var.name) != std::optional<bool>(false))
      on.insert(b.var.name);
  }
  return on.size();
}

namespace {

bool any_idle(const SolutionSet& s) {
  return std::any_of(s.begin(), s.end(), [](const Assignment& a) { return is_idle(a); });
}

}  // namespace

bool check_no_flow_axiom(const Block& block, const Interpretation& interp,
                         const Universe& universe) {
  if (any_idle(simple_firings(block.formula, interp, universe, {}, Lookup::cached_only)))
    return true;
  if (!has_externals(block.formula)) return false;
  return any_idle(simple_firings(block.formula, interp, universe, {}, Lookup::resolve));
}

std::set<Var> boundary(const Configuration& cfg, const std::set<std::size_t>& cells) {
  std::set<Var> inside, outside;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    auto& dst = cells.count(i) ? inside : outside;
    dst.insert(cfg[i].free.begin(), cfg[i].free.end());
  }
  std::set<Var> out;
  std::set_intersection(inside.begin(), inside.end(), outside.begin(), outside.end(),
                        std::inserter(out, out.end()));
  return out;
}

bool boundary_ok(const Assignment& sigma, const std::set<Var>& bnd) {
  for (const auto& v : bnd) {
    if (!v.is_sync()) continue;
    if (sigma.sync(v.name) == std::optional<bool>(true)) return false;
    if (!sigma.contains(v) && sigma.contains(Var::dataflow(v.name))) return false;
  }
  return true;
}

Formula merged_formula(const Configuration& cfg, const std::set<std::size_t>& cells) {
  std::vector<Formula> parts;
  for (auto i : cells) parts.push_back(cfg.at(i).formula);
  return fm::conj(parts);
}

std::vector<Assignment> local_firings_block(const Configuration& cfg,
                                            const std::set<std::size_t>& cells,
                                            const Interpretation& interp,
                                            const Universe& universe, Lookup lookup) {
  std::set<Var> bnd = boundary(cfg, cells);
  std::vector<Assignment> out;
  for (const auto& s : simple_firings(merged_formula(cfg, cells), interp, universe, {}, lookup))
    if (boundary_ok(s, bnd)) out.push_back(s);
  return out;
}

std::vector<Assignment> enumerate_local_firings(const Configuration& cfg,
                                                const Interpretation& interp,
                                                const Universe& universe) {
  const std::size_t n = cfg.size();
  if (n > 12) throw PreconditionError("local firing enumeration is limited to 12 blocks");
  std::map<unsigned, std::vector<Assignment>> cache;
  auto cell_firings = [&](unsigned mask) -> const std::vector<Assignment>& {
    auto it = cache.find(mask);
    if (it != cache.end()) return it->second;
    std::set<std::size_t> cells;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) cells.insert(i);
    return cache.emplace(mask, local_firings_block(cfg, cells, interp, universe)).first->second;
  };

  std::set<Assignment> out;
  // Decide blocks in order: the lowest undecided block is either left out of
  // every cell or opens a cell drawn from the undecided blocks.
  std::function<void(unsigned, const Assignment&)> rec = [&](unsigned undecided,
                                                             const Assignment& acc) {
    if (undecided == 0) {
      out.insert(acc);
      return;
    }
    unsigned low = undecided & (~undecided + 1);
    rec(undecided & ~low, acc);
    unsigned rest = undecided & ~low;
    for (unsigned sub = rest;; sub = (sub - 1) & rest) {
      unsigned cell = sub | low;
      for (const auto& s : cell_firings(cell))
        if (auto u = try_unite(acc, s)) rec(undecided & ~cell, *u);
      if (sub == 0) break;
    }
  };
  rec(n == 0 ? 0u : (1u << n) - 1, Assignment{});
  return {out.begin(), out.end()};
}

namespace {

struct Candidate {
  Assignment sigma;
  std::size_t flow;
  std::set<std::size_t> needed;  // neighbours required to lift the violation
};

// Blocks outside `region` that share a sync variable which σᴾ sets to true.
std::set<std::size_t> violated_neighbours(const Configuration& cfg,
                                          const std::set<std::size_t>& region,
                                          const Assignment& sigma) {
  std::set<std::string> on;
  for (const auto& b : sigma) {
    if (b.var.is_sync() && std::get<bool>(b.value)) on.insert(b.var.name);
    if (b.var.kind == VarKind::dataflow && !sigma.contains(Var::sync(b.var.name)))
      on.insert(b.var.name);
  }
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    if (region.count(i)) continue;
    for (const auto& x : on)
      if (cfg[i].free.count(Var::sync(x)) || cfg[i].free.count(Var::dataflow(x))) {
        out.insert(i);
        break;
      }
  }
  return out;
}

bool better(const Candidate& a, const Candidate& b) {
  if (a.flow != b.flow) return a.flow > b.flow;
  return a.sigma < b.sigma;
}

}  // namespace

LocalFiring find_local_firing(const Configuration& cfg, const Interpretation& interp,
                              const Universe& universe, const SearchOptions& opts) {
  const std::size_t limit = opts.max_region == 0 ? cfg.size() : opts.max_region;
  std::vector<bool> claimed(cfg.size(), false);
  LocalFiring result;

  for (std::size_t seed = 0; seed < cfg.size(); ++seed) {
    if (claimed[seed]) continue;
    std::set<std::size_t> region{seed};
    std::optional<Candidate> chosen;
    while (true) {
      std::set<Var> bnd = boundary(cfg, region);
      std::vector<Candidate> valid, growable;
      for (const auto& s : simple_firings(merged_formula(cfg, region), interp, universe)) {
        if (boundary_ok(s, bnd)) {
          if (!is_idle(s)) valid.push_back({s, flow(s), {}});
          continue;
        }
        auto needed = violated_neighbours(cfg, region, s);
        bool free = !needed.empty() && region.size() + needed.size() <= limit &&
                    std::none_of(needed.begin(), needed.end(),
                                 [&](std::size_t i) { return claimed[i]; });
        if (free) growable.push_back({s, flow(s), std::move(needed)});
      }
      std::optional<Candidate> best_valid;
      if (!valid.empty()) {
        best_valid = opts.policy == MergePolicy::first
                         ? valid.front()
                         : *std::min_element(valid.begin(), valid.end(), better);
      }
      std::optional<Candidate> best_grow;
      if (!growable.empty()) {
        best_grow = *std::min_element(growable.begin(), growable.end(),
                                      [](const Candidate& a, const Candidate& b) {
                                        if (a.flow != b.flow) return a.flow > b.flow;
                                        if (a.needed.size() != b.needed.size())
                                          return a.needed.size() < b.needed.size();
                                        return a.needed < b.needed;
                                      });
      }
      bool grow = best_grow && (!best_valid || (opts.policy == MergePolicy::max &&
                                                best_grow->flow > best_valid->flow));
      if (grow) {
        region.insert(best_grow->needed.begin(), best_grow->needed.end());
        continue;
      }
      chosen = best_valid;
      break;
    }
    if (!chosen) continue;
    auto joined = try_unite(result.assignment, chosen->sigma);
    if (!joined) continue;
    for (auto i : region) claimed[i] = true;
    Region r{{region.begin(), region.end()}, chosen->sigma};
    result.assignment = std::move(*joined);
    result.regions.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (claimed[i]) result.touched.push_back(i);
  return result;
}

std::optional<Assignment> extend_to_global(const Assignment& sigma,
                                           const std::vector<std::size_t>& touched,
                                           const Configuration& cfg,
                                           const Interpretation& interp,
                                           const Universe& universe) {
  std::vector<std::vector<Assignment>> options;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    if (std::find(touched.begin(), touched.end(), i) != touched.end()) continue;
    std::vector<Assignment> idle;
    for (const auto& s : simple_firings(cfg[i].formula, interp, universe))
      if (is_idle(s)) idle.push_back(s);
    options.push_back(std::move(idle));
  }
  std::optional<Assignment> found;
  std::function<void(std::size_t, const Assignment&)> rec = [&](std::size_t k,
                                                                const Assignment& acc) {
    if (found) return;
    if (k == options.size()) {
      found = acc;
      return;
    }
    for (const auto& s : options[k])
      if (auto u = try_unite(acc, s)) rec(k + 1, *u);
  };
  rec(0, sigma);
  return found;
}

}  // namespace intercon
