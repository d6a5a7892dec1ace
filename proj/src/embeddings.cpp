#include "intercon/embeddings.hpp"

#include <functional>

#include "intercon/simple.hpp"

namespace intercon {

Assignment classical_to_partial(const Assignment& sigma) {
  Assignment out;
  for (const auto& b : sigma) {
    if (const auto* g = std::get_if<GroundTerm>(&b.value); g && g->is_noflow()) continue;
    out.set(b.var, b.value);
  }
  return out;
}

Assignment partial_to_classical(const Assignment& sigma, const std::set<Var>& vars,
                                const Universe& universe) {
  if (!universe.contains(universe.default_datum()))
    throw PreconditionError("default datum is not in the universe");
  if (sigma.has_noflow()) throw PreconditionError("NOFLOW in a partial assignment");
  std::set<Var> all = flow_closure(vars);
  for (const auto& b : sigma)
    if (!all.count(b.var)) throw PreconditionError(to_string(b.var) + " is outside the variable set");
  Assignment out = sigma;
  for (const auto& v : all) {
    if (out.contains(v)) continue;
    if (v.is_sync()) {
      out.set(v, false);
    } else if (v.kind == VarKind::dataflow) {
      bool flows = sigma.sync(v.name) == std::optional<bool>(true);
      out.set(v, flows ? universe.default_datum() : GroundTerm::noflow());
    } else {
      throw PreconditionError("cannot complete " + to_string(v) + " classically");
    }
  }
  return out;
}

Assignment extend_p(const Assignment& sigma) {
  Assignment out = sigma;
  for (const auto& b : sigma) {
    if (b.var.kind != VarKind::dataflow) continue;
    auto x = sigma.sync(b.var.name);
    if (x == std::optional<bool>(false))
      throw PreconditionError("^" + b.var.name + " is bound while " + b.var.name + " is false");
    if (!x) out.set(Var::sync(b.var.name), true);
  }
  return out;
}

std::optional<Assignment> minimize_to_simple(const Assignment& sigma, const Formula& psi,
                                             const Interpretation& interp,
                                             const Universe& universe) {
  std::optional<Assignment> best;
  for (const auto& s : simple_firings(psi, interp, universe)) {
    if (!s.subset_of(sigma)) continue;
    if (!best || s.size() > best->size()) best = s;
  }
  return best;
}

namespace {

void collect_preds(const Formula& f, std::vector<Formula>& out) {
  if (f->op == Op::pred && f->name != kEquality) out.push_back(f);
  for (const auto& k : f->kids) collect_preds(k, out);
}

}  // namespace

bool interpretation_total(const Formula& psi, const Interpretation& interp,
                          const Universe& universe) {
  std::vector<Formula> preds;
  collect_preds(psi, preds);
  for (const auto& p : preds) {
    std::vector<GroundTerm> vals = universe.data();
    if (universe.noflow_enabled()) vals.push_back(GroundTerm::noflow());
    std::vector<GroundTerm> args(p->terms.size());
    bool total = true;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (!total) return;
      if (i == args.size()) {
        if (!interp.internal(p->name, args)) total = false;
        return;
      }
      for (const auto& v : vals) {
        args[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
    if (!total) return false;
  }
  return true;
}

}  // namespace intercon
