#include "intercon/simple.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>

#include "intercon/eval.hpp"

namespace intercon {

SolutionSet::SolutionSet(std::vector<Assignment> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool SolutionSet::contains(const Assignment& a) const {
  return std::binary_search(items_.begin(), items_.end(), a);
}

SolutionSet set_union(const SolutionSet& a, const SolutionSet& b) {
  std::vector<Assignment> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return SolutionSet(std::move(out));
}

SolutionSet set_intersection(const SolutionSet& a, const SolutionSet& b) {
  std::vector<Assignment> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return SolutionSet(std::move(out));
}

SimpleCounters& simple_counters() {
  thread_local SimpleCounters counters;
  return counters;
}

namespace {

Formula rewrite_simple(const Formula& f, bool positive);

Formula with_mark(const Formula& f, SimpleMark mark) {
  auto n = std::make_shared<FormulaNode>(*f);
  n->mark = mark;
  return n;
}

Formula rewrite_simple(const Formula& f, bool positive) {
  switch (f->op) {
    case Op::overlap:
    case Op::additive: {
      Formula a = rewrite_simple(f->kids[0], positive);
      Formula b = rewrite_simple(f->kids[1], positive);
      if (f->op == Op::overlap && positive) return fm::overlap(a, b);
      return fm::additive(a, b);
    }
    case Op::negation: return fm::neg(rewrite_simple(f->kids[0], !positive));
    case Op::ext_constr: return with_mark(f, positive ? SimpleMark::positive : SimpleMark::negative);
    default: return f;
  }
}

// Calls fn(left, right) for every pair with left ∪ right = sigma. `left_ok`
// and `right_ok` restrict which variables may go to each side. Stops when fn
// returns false; returns false in that case.
bool for_each_split(const Assignment& sigma, const std::function<bool(const Var&)>& left_ok,
                    const std::function<bool(const Var&)>& right_ok,
                    const std::function<bool(const Assignment&, const Assignment&)>& fn) {
  std::vector<Binding> bs(sigma.begin(), sigma.end());
  std::vector<std::vector<int>> choices;  // 0 left, 1 right, 2 both
  for (const auto& b : bs) {
    std::vector<int> c;
    bool l = left_ok(b.var), r = right_ok(b.var);
    if (l) c.push_back(0);
    if (r) c.push_back(1);
    if (l && r) c.push_back(2);
    if (c.empty()) return true;
    choices.push_back(std::move(c));
  }
  std::vector<std::size_t> idx(bs.size(), 0);
  while (true) {
    Assignment left, right;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      int c = choices[i][idx[i]];
      if (c != 1) left.set(bs[i].var, bs[i].value);
      if (c != 0) right.set(bs[i].var, bs[i].value);
    }
    ++simple_counters().split_checks;
    if (!fn(left, right)) return false;
    std::size_t i = bs.size();
    while (i > 0) {
      --i;
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
      if (i == 0) return true;
    }
    if (bs.empty()) return true;
  }
}

class Simple {
 public:
  Simple(const Interpretation& interp, const Universe& universe, Lookup lookup)
      : interp_(interp), universe_(universe.partial()), lookup_(lookup) {}

  SolutionSet solutions(const Formula& f, int depth) {
    switch (f->op) {
      case Op::truth: return SolutionSet({Assignment{}});
      case Op::sync: return SolutionSet({Assignment{{Var::sync(f->name), true}}});
      case Op::overlap: {
        SolutionSet a = solutions(f->kids[0], depth);
        SolutionSet b = solutions(f->kids[1], depth);
        std::vector<Assignment> out;
        for (const auto& x : a)
          for (const auto& y : b)
            if (auto u = try_unite(x, y)) out.push_back(std::move(*u));
        return count(SolutionSet(std::move(out)));
      }
      case Op::additive: {
        SolutionSet a = solutions(f->kids[0], depth);
        std::vector<Assignment> out;
        for (const auto& x : a)
          if (holds(x, f->kids[1], depth)) out.push_back(x);
        return SolutionSet(std::move(out));
      }
      case Op::negation: return dissolutions(f->kids[0], depth);
      case Op::pred:
      case Op::ext_pred: return ground(f, true);
      case Op::ext_constr: {
        Formula body = expand(f, depth);
        if (!body) return {};
        return solutions(body, depth + 1);
      }
      case Op::hole: throw PreconditionError("unsubstituted parameter " + f->name);
    }
    return {};
  }

  SolutionSet dissolutions(const Formula& f, int depth) {
    switch (f->op) {
      case Op::truth: return {};
      case Op::sync: return SolutionSet({Assignment{{Var::sync(f->name), false}}});
      case Op::overlap: {
        // Every member fails one side on the split (σ, σ), so the union of
        // the two sides is a complete candidate pool.
        SolutionSet a = dissolutions(f->kids[0], depth);
        SolutionSet b = dissolutions(f->kids[1], depth);
        std::vector<Assignment> out;
        for (const auto& cand : set_union(a, b)) {
          bool all = for_each_split(
              cand, [](const Var&) { return true; }, [](const Var&) { return true; },
              [&](const Assignment& l, const Assignment& r) {
                return a.contains(l) || b.contains(r);
              });
          if (all) out.push_back(cand);
        }
        return count(SolutionSet(std::move(out)));
      }
      case Op::additive:
        return set_union(dissolutions(f->kids[0], depth), dissolutions(f->kids[1], depth));
      case Op::negation: return solutions(f->kids[0], depth);
      case Op::pred:
      case Op::ext_pred: return ground(f, false);
      case Op::ext_constr: {
        Formula body = expand(f, depth);
        if (!body) return {};
        return dissolutions(body, depth + 1);
      }
      case Op::hole: throw PreconditionError("unsubstituted parameter " + f->name);
    }
    return {};
  }

  bool holds(const Assignment& s, const Formula& f, int depth) {
    switch (f->op) {
      case Op::truth: return s.empty();
      case Op::sync: return s.size() == 1 && s.sync(f->name) == std::optional<bool>(true);
      case Op::overlap: {
        const auto& fa = fv(f->kids[0]);
        const auto& fb = fv(f->kids[1]);
        bool found = false;
        for_each_split(
            s, [&](const Var& v) { return fa.count(v) > 0; },
            [&](const Var& v) { return fb.count(v) > 0; },
            [&](const Assignment& l, const Assignment& r) {
              found = holds(l, f->kids[0], depth) && holds(r, f->kids[1], depth);
              return !found;
            });
        return found;
      }
      case Op::additive: return holds(s, f->kids[0], depth) && holds(s, f->kids[1], depth);
      case Op::negation: return fails(s, f->kids[0], depth);
      case Op::pred:
      case Op::ext_pred: return ground_value(s, f) == std::optional<bool>(true);
      case Op::ext_constr: {
        Formula body = expand(f, depth);
        return body && holds(s, body, depth + 1);
      }
      case Op::hole: throw PreconditionError("unsubstituted parameter " + f->name);
    }
    return false;
  }

  bool fails(const Assignment& s, const Formula& f, int depth) {
    switch (f->op) {
      case Op::truth: return false;
      case Op::sync: return s.size() == 1 && s.sync(f->name) == std::optional<bool>(false);
      case Op::overlap: {
        const auto& fa = fv(f->kids[0]);
        const auto& fb = fv(f->kids[1]);
        return for_each_split(
            s, [](const Var&) { return true; }, [](const Var&) { return true; },
            [&](const Assignment& l, const Assignment& r) {
              return (within(l, fa) && fails(l, f->kids[0], depth)) ||
                     (within(r, fb) && fails(r, f->kids[1], depth));
            });
      }
      case Op::additive: return fails(s, f->kids[0], depth) || fails(s, f->kids[1], depth);
      case Op::negation: return holds(s, f->kids[0], depth);
      case Op::pred:
      case Op::ext_pred: return ground_value(s, f) == std::optional<bool>(false);
      case Op::ext_constr: {
        Formula body = expand(f, depth);
        return body && fails(s, body, depth + 1);
      }
      case Op::hole: throw PreconditionError("unsubstituted parameter " + f->name);
    }
    return false;
  }

 private:
  SolutionSet count(SolutionSet s) {
    simple_counters().generated += s.size();
    return s;
  }

  const std::set<Var>& fv(const Formula& f) {
    auto it = fv_cache_.find(f.get());
    if (it != fv_cache_.end()) return it->second;
    return fv_cache_.emplace(f.get(), free_vars(f)).first->second;
  }

  static bool within(const Assignment& s, const std::set<Var>& vars) {
    for (const auto& b : s)
      if (!vars.count(b.var)) return false;
    return true;
  }

  // Body of an external constraint, rewritten at the polarity recorded by
  // to_simple. Null when unknown or nested too deeply.
  Formula expand(const Formula& f, int depth) {
    if (depth >= kMaxConstraintDepth) return nullptr;
    auto l = interp_.external_constraint(f->name, lookup_);
    if (!l) return nullptr;
    Formula body = instantiate(*l, f);
    if (f->mark == SimpleMark::positive) return rewrite_simple(body, true);
    if (f->mark == SimpleMark::negative) return rewrite_simple(body, false);
    return body;
  }

  std::optional<bool> lookup(const Formula& f, const Assignment& s) {
    std::vector<GroundTerm> args;
    for (const auto& t : f->terms) {
      auto v = eval_term(s, interp_, t, Mode::partial, lookup_);
      if (!v) return std::nullopt;
      args.push_back(std::move(*v));
    }
    if (f->op == Op::pred) return interp_.internal(f->name, args);
    return interp_.external_predicate(f->name, args, lookup_);
  }

  bool in_universe(const Binding& b) {
    if (b.var.is_sync()) return false;
    const auto* g = std::get_if<GroundTerm>(&b.value);
    if (!g) return false;
    auto vals = universe_.values(b.var);
    return std::find(vals.begin(), vals.end(), *g) != vals.end();
  }

  std::optional<bool> ground_value(const Assignment& s, const Formula& f) {
    const auto& vars = fv(f);
    if (s.size() != vars.size()) return std::nullopt;
    for (const auto& b : s)
      if (!vars.count(b.var) || !in_universe(b)) return std::nullopt;
    return lookup(f, s);
  }

  SolutionSet ground(const Formula& f, bool want) {
    const auto& vars = fv(f);
    std::vector<Var> order(vars.begin(), vars.end());
    std::vector<Options> options;
    for (const auto& v : order) {
      Options o;
      for (auto& g : universe_.values(v)) o.emplace_back(Value{std::move(g)});
      options.push_back(std::move(o));
    }
    std::vector<Assignment> out;
    for_each_assignment(order, options, [&](const Assignment& a) {
      if (lookup(f, a) == std::optional<bool>(want)) out.push_back(a);
      return true;
    });
    return count(SolutionSet(std::move(out)));
  }

  const Interpretation& interp_;
  Universe universe_;
  Lookup lookup_;
  std::map<const FormulaNode*, std::set<Var>> fv_cache_;
};

}  // namespace

SolutionSet simple_solutions(const Formula& psi, const Interpretation& interp,
                             const Universe& universe, Lookup lookup) {
  return Simple(interp, universe, lookup).solutions(psi, 0);
}

SolutionSet simple_dissolutions(const Formula& psi, const Interpretation& interp,
                                const Universe& universe, Lookup lookup) {
  return Simple(interp, universe, lookup).dissolutions(psi, 0);
}

bool simple_holds(const Assignment& sigma, const Formula& psi, const Interpretation& interp,
                  const Universe& universe, Lookup lookup) {
  return Simple(interp, universe, lookup).holds(sigma, psi, 0);
}

bool simple_fails(const Assignment& sigma, const Formula& psi, const Interpretation& interp,
                  const Universe& universe, Lookup lookup) {
  return Simple(interp, universe, lookup).fails(sigma, psi, 0);
}

Formula sfa(const std::set<std::string>& ports) {
  std::vector<Formula> per_port;
  for (const auto& x : ports) {
    Formula s = fm::sync(x);
    Term d = term::dataflow(x);
    std::vector<Formula> disjuncts{fm::truth(), s, fm::neg(s), fm::overlap(s, fm::eq(d, d)),
                                   fm::eq(d, d)};
    std::vector<Formula> negated;
    for (auto& g : disjuncts) negated.push_back(fm::neg(g));
    per_port.push_back(fm::neg(fm::additive_conj(negated)));
  }
  return fm::conj(per_port);
}

Formula sfa(const Formula& psi) { return sfa(ports(free_vars(psi))); }

Formula firing_axiom(const std::set<Var>& vars) {
  std::vector<Formula> parts{sfa(ports(vars))};
  for (const auto& v : vars) {
    if (v.is_flow()) continue;
    Term t = term::var(v);
    parts.push_back(fm::additive_or(fm::truth(), fm::eq(t, t)));
  }
  return fm::conj(parts);
}

Formula to_simple(const Formula& psi) { return rewrite_simple(psi, true); }

Formula to_partial(const Formula& psi) {
  switch (psi->op) {
    case Op::overlap:
    case Op::additive:
      return fm::overlap(to_partial(psi->kids[0]), to_partial(psi->kids[1]));
    case Op::negation: return fm::neg(to_partial(psi->kids[0]));
    case Op::ext_constr: {
      std::vector<Formula> kids;
      for (const auto& k : psi->kids) kids.push_back(to_partial(k));
      auto n = std::make_shared<FormulaNode>(*psi);
      n->kids = std::move(kids);
      return n;
    }
    default: return psi;
  }
}

SolutionSet simple_firings(const Formula& psi, const Interpretation& interp,
                           const Universe& universe, const std::set<Var>& extra, Lookup lookup) {
  std::set<Var> vars = free_vars(psi);
  vars.insert(extra.begin(), extra.end());
  return simple_solutions(fm::additive(to_simple(psi), firing_axiom(vars)), interp, universe,
                          lookup);
}

}  // namespace intercon
