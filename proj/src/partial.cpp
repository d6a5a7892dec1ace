#include "intercon/partial.hpp"

#include "intercon/classical.hpp"
#include "intercon/eval.hpp"

namespace intercon {

const char* to_string(Truth3 t) {
  switch (t) {
    case Truth3::sat: return "sat";
    case Truth3::dissat: return "dissat";
    case Truth3::undefined: return "undefined";
  }
  return "?";
}

namespace {

Truth3 from_bool(std::optional<bool> b) {
  if (!b) return Truth3::undefined;
  return *b ? Truth3::sat : Truth3::dissat;
}

Truth3 eval(const Assignment& sigma, const Interpretation& interp, const Formula& f,
            Lookup lookup, int depth) {
  switch (f->op) {
    case Op::truth: return Truth3::sat;
    case Op::sync: return from_bool(sigma.sync(f->name));
    case Op::overlap:
    case Op::additive: {
      Truth3 a = eval(sigma, interp, f->kids[0], lookup, depth);
      if (a == Truth3::dissat) return a;
      Truth3 b = eval(sigma, interp, f->kids[1], lookup, depth);
      if (b == Truth3::dissat) return b;
      return a == Truth3::sat && b == Truth3::sat ? Truth3::sat : Truth3::undefined;
    }
    case Op::negation: {
      Truth3 a = eval(sigma, interp, f->kids[0], lookup, depth);
      if (a == Truth3::sat) return Truth3::dissat;
      if (a == Truth3::dissat) return Truth3::sat;
      return a;
    }
    case Op::pred: {
      std::vector<std::optional<GroundTerm>> args;
      for (const auto& t : f->terms)
        args.push_back(eval_term(sigma, interp, t, Mode::partial, lookup));
      return from_bool(interp.internal_partial(f->name, args));
    }
    case Op::ext_pred: {
      std::vector<GroundTerm> args;
      for (const auto& t : f->terms) {
        auto v = eval_term(sigma, interp, t, Mode::partial, lookup);
        if (!v) return Truth3::undefined;
        args.push_back(std::move(*v));
      }
      return from_bool(interp.external_predicate(f->name, args, lookup));
    }
    case Op::ext_constr: {
      if (depth >= kMaxConstraintDepth) return Truth3::undefined;
      auto l = interp.external_constraint(f->name, lookup);
      if (!l) return Truth3::undefined;
      return eval(sigma, interp, instantiate(*l, f), lookup, depth + 1);
    }
    case Op::hole: throw PreconditionError("unsubstituted parameter " + f->name);
  }
  return Truth3::undefined;
}

}  // namespace

Truth3 partial_eval(const Assignment& sigma, const Interpretation& interp, const Formula& psi,
                    Lookup lookup) {
  if (sigma.has_noflow()) throw PreconditionError("NOFLOW in a partial assignment");
  return eval(sigma, interp, psi, lookup, 0);
}

bool mfa_check(const Assignment& sigma) {
  for (const auto& b : sigma) {
    if (b.var.kind != VarKind::dataflow) continue;
    auto x = sigma.sync(b.var.name);
    if (!x || !*x) return false;
  }
  return true;
}

std::vector<Assignment> enumerate_partial_firings(const Formula& psi, const Interpretation& interp,
                                                  const Universe& universe,
                                                  const std::set<Var>& extra) {
  Universe u = universe.partial();
  std::vector<Var> vars = enumeration_vars(psi, extra);
  std::vector<Options> options;
  for (const auto& v : vars) {
    Options o{std::nullopt};
    if (v.is_sync()) {
      o.emplace_back(Value{false});
      o.emplace_back(Value{true});
    } else {
      for (auto& g : u.values(v)) o.emplace_back(Value{std::move(g)});
    }
    options.push_back(std::move(o));
  }
  std::vector<Assignment> out;
  for_each_assignment(vars, options, [&](const Assignment& a) {
    if (mfa_check(a) && eval(a, interp, psi, Lookup::resolve, 0) == Truth3::sat) out.push_back(a);
    return true;
  });
  return out;
}

}  // namespace intercon
