#include "intercon/classical.hpp"

#include "intercon/eval.hpp"

namespace intercon {

namespace {

bool sat(const Assignment& sigma, const Interpretation& interp, const Formula& f) {
  switch (f->op) {
    case Op::truth: return true;
    case Op::sync: {
      auto v = sigma.sync(f->name);
      if (!v) throw PreconditionError("classical assignment misses " + f->name);
      return *v;
    }
    case Op::overlap:
    case Op::additive: return sat(sigma, interp, f->kids[0]) && sat(sigma, interp, f->kids[1]);
    case Op::negation: return !sat(sigma, interp, f->kids[0]);
    case Op::pred: {
      std::vector<GroundTerm> args;
      for (const auto& t : f->terms) {
        auto v = eval_term(sigma, interp, t, Mode::classical, Lookup::cached_only);
        if (!v) throw PreconditionError("classical assignment misses a variable of " + to_string(t));
        args.push_back(std::move(*v));
      }
      auto r = interp.internal(f->name, args);
      if (!r)
        throw PreconditionError("interpretation has no entry for " +
                                GroundTerm::apply(f->name, args).str());
      return *r;
    }
    case Op::ext_pred:
    case Op::ext_constr:
      throw PreconditionError("external symbol @" + f->name + " under classical semantics");
    case Op::hole: throw PreconditionError("unsubstituted parameter " + f->name);
  }
  return false;
}

}  // namespace

bool classical_sat(const Assignment& sigma, const Interpretation& interp, const Formula& psi) {
  for (const auto& v : free_vars(psi))
    if (!sigma.contains(v)) throw PreconditionError("classical assignment misses " + to_string(v));
  return sat(sigma, interp, psi);
}

Formula flow_axiom(const std::set<std::string>& ports, const Universe& universe) {
  if (!universe.noflow_enabled())
    throw PreconditionError("the flow axiom needs a universe in classical mode");
  std::vector<Formula> parts;
  for (const auto& x : ports)
    parts.push_back(fm::iff(fm::neg(fm::sync(x)), fm::eq(term::dataflow(x), term::noflow())));
  return fm::conj(parts);
}

std::vector<Var> enumeration_vars(const Formula& psi, const std::set<Var>& extra) {
  std::set<Var> vars = free_vars(psi);
  vars.insert(extra.begin(), extra.end());
  vars = flow_closure(vars);
  return {vars.begin(), vars.end()};
}

std::vector<Assignment> enumerate_classical_firings(const Formula& psi,
                                                    const Interpretation& interp,
                                                    const Universe& universe,
                                                    const std::set<Var>& extra) {
  if (has_externals(psi))
    throw PreconditionError("classical firings are undefined for formulas with external symbols");
  Universe u = universe.classical();
  std::vector<Var> vars = enumeration_vars(psi, extra);
  std::set<Var> varset(vars.begin(), vars.end());
  Formula checked = fm::overlap(psi, flow_axiom(ports(varset), u));

  std::vector<Options> options;
  for (const auto& v : vars) {
    Options o;
    if (v.is_sync()) {
      o = {Value{false}, Value{true}};
    } else {
      for (auto& g : u.values(v)) o.emplace_back(Value{std::move(g)});
    }
    options.push_back(std::move(o));
  }
  std::vector<Assignment> out;
  for_each_assignment(vars, options, [&](const Assignment& a) {
    if (sat(a, interp, checked)) out.push_back(a);
    return true;
  });
  return out;
}

}  // namespace intercon
