#include "intercon/oracle.hpp"

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <unordered_map>

namespace intercon::oracle {

namespace {

std::set<Var> closed(std::set<Var> vars) {
  std::set<Var> out;
  for (const auto& v : vars) {
    out.insert(v);
    if (v.kind == VarKind::sync) out.insert(Var::dataflow(v.name));
    if (v.kind == VarKind::dataflow) out.insert(Var::sync(v.name));
  }
  return out;
}

std::size_t count_ports(const std::set<Var>& vars) {
  std::size_t n = 0;
  for (const auto& v : vars) n += v.kind == VarKind::sync;
  return n;
}

// Lists every combination of the per-variable choices, first variable slowest.
void odometer(const std::vector<Var>& vars, const std::vector<std::vector<std::optional<Value>>>& opts,
              const std::function<void(const Assignment&)>& fn) {
  std::vector<std::size_t> idx(vars.size(), 0);
  for (const auto& o : opts)
    if (o.empty()) return;
  while (true) {
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (opts[i][idx[i]]) a.set(vars[i], *opts[i][idx[i]]);
    fn(a);
    std::size_t k = vars.size();
    while (k > 0) {
      --k;
      if (++idx[k] < opts[k].size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (vars.empty()) return;
  }
}

void enumerate(const std::set<Var>& var_set, const Universe& u, bool total, const Limits& limits,
               const std::function<void(const Assignment&)>& fn) {
  if (count_ports(var_set) > limits.max_ports)
    throw Refusal("oracle: more than " + std::to_string(limits.max_ports) + " ports");
  if (u.data().size() > limits.max_data)
    throw Refusal("oracle: more than " + std::to_string(limits.max_data) + " data values");
  std::vector<Var> vars(var_set.begin(), var_set.end());
  std::vector<std::vector<std::optional<Value>>> opts;
  double count = 1;
  for (const auto& v : vars) {
    std::vector<std::optional<Value>> o;
    if (!total) o.push_back(std::nullopt);
    if (v.kind == VarKind::sync) {
      o.push_back(Value(false));
      o.push_back(Value(true));
    } else {
      for (const auto& g : u.values(v)) o.push_back(Value(g));
    }
    count *= static_cast<double>(o.size());
    opts.push_back(std::move(o));
  }
  if (count > static_cast<double>(limits.max_candidates))
    throw Refusal("oracle: too many candidate assignments");
  odometer(vars, opts, fn);
}

std::optional<GroundTerm> val(const Term& t, const Assignment& s, const Interpretation& interp,
                              bool classical) {
  switch (t->kind) {
    case TermNode::Kind::var: {
      const Value* v = s.find(t->var);
      if (!v || !std::holds_alternative<GroundTerm>(*v)) return std::nullopt;
      return std::get<GroundTerm>(*v);
    }
    case TermNode::Kind::apply:
    case TermNode::Kind::external: {
      std::vector<GroundTerm> args;
      for (const auto& a : t->args) {
        auto g = val(a, s, interp, classical);
        if (!g) return std::nullopt;
        args.push_back(*g);
      }
      if (t->kind == TermNode::Kind::external)
        return interp.external_function(t->name, args, Lookup::cached_only);
      if (classical)
        for (const auto& a : args)
          if (a.is_noflow()) return GroundTerm::noflow();
      return GroundTerm::apply(t->name, args);
    }
    case TermNode::Kind::hole: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Formula> body_of(const Formula& call, const Interpretation& interp) {
  auto l = interp.external_constraint(call->name, Lookup::cached_only);
  if (!l) return std::nullopt;
  return instantiate(*l, call);
}

bool classical_rec(const Assignment& s, const Formula& f, const Interpretation& interp, int depth) {
  switch (f->op) {
    case Op::truth: return true;
    case Op::sync: {
      const Value* v = s.find(Var::sync(f->name));
      if (!v) throw PreconditionError("oracle: " + f->name + " is unbound");
      return std::get<bool>(*v);
    }
    case Op::overlap:
    case Op::additive:
      return classical_rec(s, f->kids[0], interp, depth) && classical_rec(s, f->kids[1], interp, depth);
    case Op::negation: return !classical_rec(s, f->kids[0], interp, depth);
    case Op::pred: {
      std::vector<GroundTerm> args;
      for (const auto& t : f->terms) {
        auto g = val(t, s, interp, true);
        if (!g) throw PreconditionError("oracle: an argument of " + f->name + " is undefined");
        args.push_back(*g);
      }
      auto r = interp.internal(f->name, args);
      if (!r) throw PreconditionError("oracle: " + f->name + " has no table entry");
      return *r;
    }
    case Op::ext_pred:
    case Op::ext_constr:
      throw PreconditionError("oracle: classical formulas have no external symbols");
    case Op::hole: break;
  }
  throw PreconditionError("oracle: formula hole");
}

Value3 negate(Value3 v) {
  if (v == Value3::sat) return Value3::dissat;
  if (v == Value3::dissat) return Value3::sat;
  return v;
}

Value3 partial_rec(const Assignment& s, const Formula& f, const Interpretation& interp, int depth) {
  switch (f->op) {
    case Op::truth: return Value3::sat;
    case Op::sync: {
      auto v = s.sync(f->name);
      if (!v) return Value3::undefined;
      return *v ? Value3::sat : Value3::dissat;
    }
    case Op::overlap:
    case Op::additive: {
      Value3 a = partial_rec(s, f->kids[0], interp, depth);
      Value3 b = partial_rec(s, f->kids[1], interp, depth);
      if (a == Value3::dissat || b == Value3::dissat) return Value3::dissat;
      if (a == Value3::sat && b == Value3::sat) return Value3::sat;
      return Value3::undefined;
    }
    case Op::negation: return negate(partial_rec(s, f->kids[0], interp, depth));
    case Op::pred: {
      std::vector<std::optional<GroundTerm>> args;
      for (const auto& t : f->terms) args.push_back(val(t, s, interp, false));
      auto r = interp.internal_partial(f->name, args);
      if (!r) return Value3::undefined;
      return *r ? Value3::sat : Value3::dissat;
    }
    case Op::ext_pred: {
      std::vector<GroundTerm> args;
      for (const auto& t : f->terms) {
        auto g = val(t, s, interp, false);
        if (!g) return Value3::undefined;
        args.push_back(*g);
      }
      auto r = interp.external_predicate(f->name, args, Lookup::cached_only);
      if (!r) return Value3::undefined;
      return *r ? Value3::sat : Value3::dissat;
    }
    case Op::ext_constr: {
      if (depth >= kMaxConstraintDepth) return Value3::undefined;
      auto body = body_of(f, interp);
      if (!body) return Value3::undefined;
      return partial_rec(s, *body, interp, depth + 1);
    }
    case Op::hole: break;
  }
  return Value3::undefined;
}

// Reading of a node: as written, or as part of ψ^S in a positive or negative
// position.
enum class Reading { plain, positive, negative };

Reading flip(Reading r) {
  if (r == Reading::positive) return Reading::negative;
  if (r == Reading::negative) return Reading::positive;
  return r;
}

struct MemoKey {
  const FormulaNode* node;
  int reading;
  bool positive;
  Assignment sigma;
  bool operator==(const MemoKey&) const = default;
};

struct MemoHash {
  std::size_t operator()(const MemoKey& k) const {
    std::size_t h = AssignmentHash{}(k.sigma);
    h ^= std::hash<const void*>{}(k.node) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h * 4 + static_cast<std::size_t>(k.reading) * 2 + k.positive;
  }
};

class Decider {
 public:
  explicit Decider(const Interpretation& interp) : interp_(interp) {}

  // Memo entries are keyed by node address, so every formula decided through
  // this object has to outlive it.
  Formula pin(Formula f) { return keep_.emplace_back(std::move(f)); }

  bool holds(const Assignment& s, const Formula& f, Reading r, int depth = 0) {
    if (!worth_memo(f)) return holds_raw(s, f, r, depth);
    MemoKey key{f.get(), static_cast<int>(r), true, s};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool out = holds_raw(s, f, r, depth);
    memo_.emplace(std::move(key), out);
    return out;
  }

  bool fails(const Assignment& s, const Formula& f, Reading r, int depth = 0) {
    if (!worth_memo(f)) return fails_raw(s, f, r, depth);
    MemoKey key{f.get(), static_cast<int>(r), false, s};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool out = fails_raw(s, f, r, depth);
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  static bool worth_memo(const Formula& f) {
    return f->op == Op::overlap || f->op == Op::additive || f->op == Op::ext_constr;
  }

  const std::set<Var>& fv(const Formula& f) {
    auto it = fv_.find(f.get());
    if (it == fv_.end()) it = fv_.emplace(f.get(), free_vars(f)).first;
    return it->second;
  }

  std::optional<Formula> body(const Formula& call) {
    auto it = bodies_.find(call.get());
    if (it != bodies_.end()) return it->second;
    auto b = body_of(call, interp_);
    bodies_.emplace(call.get(), b);
    keep_.push_back(call);
    return b;
  }

  // dom(σ) = fv(p(t̄)) and I maps the ground instance to `want`.
  bool atom(const Assignment& s, const Formula& f, bool want) {
    const auto& vars = fv(f);
    if (s.size() != vars.size()) return false;
    for (const auto& b : s)
      if (!vars.count(b.var)) return false;
    std::vector<GroundTerm> args;
    for (const auto& t : f->terms) {
      auto g = val(t, s, interp_, false);
      if (!g) return false;
      args.push_back(*g);
    }
    std::optional<bool> r = f->op == Op::pred
                                ? interp_.internal(f->name, args)
                                : interp_.external_predicate(f->name, args, Lookup::cached_only);
    return r == std::optional<bool>(want);
  }

  bool holds_raw(const Assignment& s, const Formula& f, Reading r, int depth) {
    switch (f->op) {
      case Op::truth: return s.empty();
      case Op::sync: return s == Assignment{{Var::sync(f->name), true}};
      case Op::additive:
        return holds(s, f->kids[0], r, depth) && holds(s, f->kids[1], r, depth);
      case Op::overlap: {
        if (r == Reading::negative)
          return holds(s, f->kids[0], r, depth) && holds(s, f->kids[1], r, depth);
        // σ = σ₁ ∪ σ₂ where each σᵢ only binds variables of its conjunct.
        const auto& fa = fv(f->kids[0]);
        const auto& fb = fv(f->kids[1]);
        std::vector<Binding> shared;
        Assignment left, right;
        for (const auto& b : s) {
          bool in_a = fa.count(b.var), in_b = fb.count(b.var);
          if (!in_a && !in_b) return false;
          if (in_a && in_b) shared.push_back(b);
          else if (in_a) left.set(b.var, b.value);
          else right.set(b.var, b.value);
        }
        std::size_t combos = 1;
        for (std::size_t i = 0; i < shared.size(); ++i) combos *= 3;
        for (std::size_t c = 0; c < combos; ++c) {
          Assignment l = left, rr = right;
          std::size_t k = c;
          for (const auto& b : shared) {
            std::size_t side = k % 3;
            k /= 3;
            if (side != 1) l.set(b.var, b.value);
            if (side != 0) rr.set(b.var, b.value);
          }
          if (holds(l, f->kids[0], r, depth) && holds(rr, f->kids[1], r, depth)) return true;
        }
        return false;
      }
      case Op::negation: return fails(s, f->kids[0], flip(r), depth);
      case Op::pred:
      case Op::ext_pred: return atom(s, f, true);
      case Op::ext_constr: {
        if (depth >= kMaxConstraintDepth) return false;
        auto b = body(f);
        return b && holds(s, *b, r, depth + 1);
      }
      case Op::hole: return false;
    }
    return false;
  }

  bool fails_raw(const Assignment& s, const Formula& f, Reading r, int depth) {
    switch (f->op) {
      case Op::truth: return false;
      case Op::sync: return s == Assignment{{Var::sync(f->name), false}};
      case Op::additive:
        return fails(s, f->kids[0], r, depth) || fails(s, f->kids[1], r, depth);
      case Op::overlap: {
        if (r == Reading::negative)
          return fails(s, f->kids[0], r, depth) || fails(s, f->kids[1], r, depth);
        // Every split σ = σ₁ ∪ σ₂ must dissatisfy one side.
        std::vector<Binding> all(s.begin(), s.end());
        std::size_t combos = 1;
        for (std::size_t i = 0; i < all.size(); ++i) combos *= 3;
        for (std::size_t c = 0; c < combos; ++c) {
          Assignment l, rr;
          std::size_t k = c;
          for (const auto& b : all) {
            std::size_t side = k % 3;
            k /= 3;
            if (side != 1) l.set(b.var, b.value);
            if (side != 0) rr.set(b.var, b.value);
          }
          if (!fails(l, f->kids[0], r, depth) && !fails(rr, f->kids[1], r, depth)) return false;
        }
        return true;
      }
      case Op::negation: return holds(s, f->kids[0], flip(r), depth);
      case Op::pred:
      case Op::ext_pred: return atom(s, f, false);
      case Op::ext_constr: {
        if (depth >= kMaxConstraintDepth) return false;
        auto b = body(f);
        return b && fails(s, *b, r, depth + 1);
      }
      case Op::hole: return false;
    }
    return false;
  }

  const Interpretation& interp_;
  std::unordered_map<MemoKey, bool, MemoHash> memo_;
  std::map<const FormulaNode*, std::set<Var>> fv_;
  std::map<const FormulaNode*, std::optional<Formula>> bodies_;
  std::vector<Formula> keep_;
};

// true ⩔ x ⩔ ¬x ⩔ (x ∧ x̂=x̂) ⩔ x̂=x̂ per port, and true ⩔ v=v for the rest.
Formula firing_constraint(const std::set<Var>& vars) {
  auto alt = [](const std::vector<Formula>& options) {
    Formula acc = fm::neg(options.front());
    for (std::size_t i = 1; i < options.size(); ++i) acc = fm::additive(acc, fm::neg(options[i]));
    return fm::neg(acc);
  };
  Formula out = fm::truth();
  bool first = true;
  auto add = [&](Formula f) {
    out = first ? f : fm::overlap(out, f);
    first = false;
  };
  for (const auto& v : vars) {
    if (v.kind == VarKind::sync) {
      Formula x = fm::sync(v.name);
      Term xd = term::var(Var::dataflow(v.name));
      Formula same = fm::eq(xd, xd);
      add(alt({fm::truth(), x, fm::neg(x), fm::overlap(x, same), same}));
    } else if (!v.is_flow()) {
      Term t = term::var(v);
      add(alt({fm::truth(), fm::eq(t, t)}));
    }
  }
  return out;
}

std::vector<Assignment> sorted(std::set<Assignment> s) { return {s.begin(), s.end()}; }

bool flows(const Assignment& s, const std::string& port) {
  auto x = s.sync(port);
  if (x) return *x;
  return s.contains(Var::dataflow(port));
}

}  // namespace

const char* to_string(Semantics s) {
  switch (s) {
    case Semantics::classical: return "classical";
    case Semantics::partial: return "partial";
    case Semantics::simple: return "simple";
    case Semantics::local: return "local";
  }
  return "?";
}

bool classical_value(const Assignment& sigma, const Formula& psi, const Interpretation& interp) {
  return classical_rec(sigma, psi, interp, 0);
}

Value3 partial_value(const Assignment& sigma, const Formula& psi, const Interpretation& interp) {
  return partial_rec(sigma, psi, interp, 0);
}

bool holds(const Assignment& sigma, const Formula& psi, const Interpretation& interp,
           bool rewrite) {
  return Decider(interp).holds(sigma, psi, rewrite ? Reading::positive : Reading::plain);
}

bool fails(const Assignment& sigma, const Formula& psi, const Interpretation& interp,
           bool rewrite) {
  return Decider(interp).fails(sigma, psi, rewrite ? Reading::positive : Reading::plain);
}

bool is_simple_firing(const Assignment& sigma, const Formula& psi, const Interpretation& interp,
                      const std::set<Var>& vars) {
  Decider d(interp);
  Formula fa = firing_constraint(closed(vars));
  return d.holds(sigma, psi, Reading::positive) && d.holds(sigma, fa, Reading::plain);
}

std::vector<Assignment> classical_firings(const Formula& psi, const Interpretation& interp,
                                          const Universe& universe, const std::set<Var>& extra,
                                          const Limits& limits) {
  std::set<Var> vars = free_vars(psi);
  vars.insert(extra.begin(), extra.end());
  vars = closed(vars);
  std::set<Assignment> out;
  enumerate(vars, universe.classical(), true, limits, [&](const Assignment& s) {
    for (const auto& v : vars) {
      if (v.kind != VarKind::sync) continue;
      bool off = !std::get<bool>(*s.find(v));
      bool none = s.term(Var::dataflow(v.name))->is_noflow();
      if (off != none) return;
    }
    if (classical_rec(s, psi, interp, 0)) out.insert(s);
  });
  return sorted(std::move(out));
}

std::vector<Assignment> partial_firings(const Formula& psi, const Interpretation& interp,
                                        const Universe& universe, const std::set<Var>& extra,
                                        const Limits& limits) {
  std::set<Var> vars = free_vars(psi);
  vars.insert(extra.begin(), extra.end());
  vars = closed(vars);
  std::set<Assignment> out;
  enumerate(vars, universe.partial(), false, limits, [&](const Assignment& s) {
    for (const auto& b : s)
      if (b.var.kind == VarKind::dataflow && s.sync(b.var.name) != std::optional<bool>(true))
        return;
    if (partial_rec(s, psi, interp, 0) == Value3::sat) out.insert(s);
  });
  return sorted(std::move(out));
}

namespace {

std::vector<Assignment> simple_firings_with(Decider& d, const Formula& psi,
                                            const Universe& universe, const std::set<Var>& extra,
                                            const Limits& limits,
                                            const std::function<bool(const Assignment&)>& also = {}) {
  std::set<Var> vars = free_vars(psi);
  vars.insert(extra.begin(), extra.end());
  vars = closed(vars);
  Formula fa = d.pin(firing_constraint(vars));
  d.pin(psi);
  if (count_ports(vars) > limits.max_ports)
    throw Refusal("oracle: more than " + std::to_string(limits.max_ports) + " ports");
  if (universe.data().size() > limits.max_data)
    throw Refusal("oracle: more than " + std::to_string(limits.max_data) + " data values");

  // The firing constraint is a conjunction over variable-disjoint groups (one
  // per port, one per other variable), so an assignment satisfies it exactly
  // when each group's restriction satisfies that group's part. Candidates are
  // the products of the surviving group assignments.
  std::vector<std::set<Var>> groups;
  for (const auto& v : vars) {
    if (v.kind == VarKind::sync)
      groups.push_back({v, Var::dataflow(v.name)});
    else if (!v.is_flow())
      groups.push_back({v});
  }
  Limits unbounded;
  unbounded.max_data = unbounded.max_candidates = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<Assignment>> options;
  double count = 1;
  for (const auto& g : groups) {
    Formula part = d.pin(firing_constraint(g));
    std::vector<Assignment> ok;
    enumerate(g, universe.partial(), false, unbounded, [&](const Assignment& s) {
      if (d.holds(s, part, Reading::plain)) ok.push_back(s);
    });
    count *= static_cast<double>(ok.size());
    options.push_back(std::move(ok));
  }
  if (count > static_cast<double>(limits.max_candidates))
    throw Refusal("oracle: too many candidate assignments");

  std::set<Assignment> out;
  std::function<void(std::size_t, const Assignment&)> product = [&](std::size_t i, const Assignment& acc) {
    if (i == options.size()) {
      if (also && !also(acc)) return;
      if (d.holds(acc, fa, Reading::plain) && d.holds(acc, psi, Reading::positive)) out.insert(acc);
      return;
    }
    for (const auto& s : options[i]) product(i + 1, unite(acc, s));
  };
  product(0, Assignment{});
  return sorted(std::move(out));
}

}  // namespace

std::vector<Assignment> simple_firings(const Formula& psi, const Interpretation& interp,
                                       const Universe& universe, const std::set<Var>& extra,
                                       const Limits& limits) {
  Decider d(interp);
  return simple_firings_with(d, psi, universe, extra, limits);
}

std::vector<Assignment> simple_solutions(const Formula& psi, const Interpretation& interp,
                                         const Universe& universe, const Limits& limits) {
  Decider d(interp);
  std::set<Assignment> out;
  enumerate(free_vars(psi), universe.partial(), false, limits, [&](const Assignment& s) {
    if (d.holds(s, psi, Reading::plain)) out.insert(s);
  });
  return sorted(std::move(out));
}

std::vector<Assignment> simple_dissolutions(const Formula& psi, const Interpretation& interp,
                                            const Universe& universe, const Limits& limits) {
  Decider d(interp);
  std::set<Assignment> out;
  enumerate(free_vars(psi), universe.partial(), false, limits, [&](const Assignment& s) {
    if (d.fails(s, psi, Reading::plain)) out.insert(s);
  });
  return sorted(std::move(out));
}

std::vector<Assignment> local_firings(const Configuration& cfg, const Interpretation& interp,
                                      const Universe& universe, const Limits& limits) {
  const std::size_t n = cfg.size();
  if (n > limits.max_blocks)
    throw Refusal("oracle: more than " + std::to_string(limits.max_blocks) + " blocks");
  std::vector<std::set<Var>> fvs;
  std::set<Var> all;
  for (const auto& b : cfg) {
    fvs.push_back(free_vars(b.formula));
    all.insert(fvs.back().begin(), fvs.back().end());
  }
  if (count_ports(closed(all)) > limits.max_ports)
    throw Refusal("oracle: more than " + std::to_string(limits.max_ports) + " ports");

  Decider decider(interp);
  // Local firings of one part, keyed by its block mask.
  std::map<unsigned, std::vector<Assignment>> part_firings;
  auto firings_of = [&](unsigned mask) -> const std::vector<Assignment>& {
    if (auto it = part_firings.find(mask); it != part_firings.end()) return it->second;
    std::set<Var> inside, outside;
    Formula f;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        f = f ? fm::overlap(f, cfg[i].formula) : cfg[i].formula;
        inside.insert(fvs[i].begin(), fvs[i].end());
      } else {
        outside.insert(fvs[i].begin(), fvs[i].end());
      }
    }
    std::set<std::string> border;
    for (const auto& v : inside)
      if (outside.count(v) && v.kind == VarKind::sync) border.insert(v.name);
    auto quiet_border = [&](const Assignment& s) {
      for (const auto& x : border)
        if (flows(s, x)) return false;
      return true;
    };
    return part_firings
        .emplace(mask, simple_firings_with(decider, f, universe, {}, limits, quiet_border))
        .first->second;
  };

  std::set<Assignment> out;
  // Restricted growth strings list every set partition of the blocks once.
  std::vector<std::size_t> part(n, 0);
  std::function<void(std::size_t, std::size_t)> partitions = [&](std::size_t i, std::size_t used) {
    if (i < n) {
      for (std::size_t p = 0; p <= used && p < n; ++p) {
        part[i] = p;
        partitions(i + 1, std::max(used, p + 1));
      }
      return;
    }
    std::vector<unsigned> masks(used, 0);
    for (std::size_t k = 0; k < n; ++k) masks[part[k]] |= 1u << k;
    std::function<void(std::size_t, const Assignment&)> choose = [&](std::size_t j,
                                                                     const Assignment& acc) {
      if (j == masks.size()) {
        out.insert(acc);
        return;
      }
      choose(j + 1, acc);
      for (const auto& s : firings_of(masks[j]))
        if (auto u = try_unite(acc, s)) choose(j + 1, *u);
    };
    choose(0, Assignment{});
  };
  if (n == 0) return {Assignment{}};
  partitions(0, 0);
  return sorted(std::move(out));
}

std::vector<Assignment> firings(Semantics s, const Formula& psi, const Configuration& cfg,
                                const Interpretation& interp, const Universe& universe,
                                const std::set<Var>& extra, const Limits& limits) {
  switch (s) {
    case Semantics::classical: return classical_firings(psi, interp, universe, extra, limits);
    case Semantics::partial: return partial_firings(psi, interp, universe, extra, limits);
    case Semantics::simple: return simple_firings(psi, interp, universe, extra, limits);
    case Semantics::local: return local_firings(cfg, interp, universe, limits);
  }
  return {};
}

}  // namespace intercon::oracle
