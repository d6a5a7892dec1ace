#include "intercon/network.hpp"

#include <algorithm>

#include "intercon/embeddings.hpp"
#include "intercon/simple.hpp"

namespace intercon {

std::string to_string(const Signature& s) {
  switch (s.kind) {
    case Signature::Kind::pred: return "pred";
    case Signature::Kind::fun: return "fun";
    case Signature::Kind::constr:
      return "constr(" + std::to_string(s.formulas) + "," + std::to_string(s.terms) + ")";
  }
  return "?";
}

const char* to_string(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::stateless: return "stateless";
    case PrimitiveKind::stateful: return "stateful";
    case PrimitiveKind::external: return "external";
  }
  return "?";
}

const Primitive* Network::find(const std::string& id) const {
  for (const auto& p : primitives)
    if (p.id == id) return &p;
  return nullptr;
}

Primitive* Network::find(const std::string& id) {
  for (auto& p : primitives)
    if (p.id == id) return &p;
  return nullptr;
}

Formula encode_state_machine(const std::string& prim,
                             const std::vector<std::pair<GroundTerm, Formula>>& transitions) {
  std::vector<Formula> parts;
  Term state = term::var(Var::state(prim));
  for (const auto& [q, psi] : transitions)
    parts.push_back(fm::implies(fm::eq(state, term::ground(q)), psi));
  return fm::conj(parts);
}

Formula block_formula(const Primitive& p, const Formula& eps) {
  return fm::overlap(fm::additive(p.rho, firing_axiom(p.vars)), eps);
}

Formula block_formula(const Primitive& p) { return block_formula(p, p.eps); }

Formula plain_formula(const Primitive& p) { return fm::overlap(p.rho, p.eps); }

Configuration configuration(const Network& net) {
  Configuration cfg;
  for (const auto& p : net.primitives) cfg.push_back(make_block(p.id, block_formula(p), {p.id}));
  return cfg;
}

std::string check_ephemeral(const Primitive& p, const Formula& eps) {
  for (const auto& v : free_vars(eps))
    if (!p.vars.count(v)) return "uses " + to_string(v) + " outside the variables of " + p.id;
  switch (p.kind) {
    case PrimitiveKind::stateless:
      if (eps->op != Op::truth) return "a stateless primitive keeps eps = true";
      break;
    case PrimitiveKind::stateful: {
      bool shape = eps->op == Op::pred && eps->name == kEquality && eps->terms.size() == 2 &&
                   eps->terms[0]->kind == TermNode::Kind::var &&
                   eps->terms[0]->var == Var::state(p.id) && is_ground(eps->terms[1]) &&
                   !has_externals(eps->terms[1]);
      if (!shape) return "a stateful primitive needs eps of the form state." + p.id + " = <state>";
      break;
    }
    case PrimitiveKind::external:
      for (const auto& v : free_vars(eps))
        if (v.kind == VarKind::state || v.kind == VarKind::state_next)
          return "external primitives have no state variables";
      break;
  }
  return {};
}

void validate(const Network& net) {
  if (!net.universe.contains(net.universe.default_datum()))
    throw LoadError("default datum is not in the universe");
  for (const auto& p : net.primitives) {
    auto err = [&](const std::string& msg) { return LoadError("primitive '" + p.id + "': " + msg); };
    for (const auto& v : p.vars) {
      bool state = v.kind == VarKind::state || v.kind == VarKind::state_next;
      if (state && p.kind != PrimitiveKind::stateful)
        throw err("only stateful primitives use state variables");
      if (state && v.name != p.id) throw err("uses the state of another primitive");
      if (v.kind == VarKind::comm && p.kind != PrimitiveKind::external)
        throw err("only external primitives use communication variables");
    }
    for (const auto& v : free_vars(p.rho))
      if (!p.vars.count(v)) throw err("rho uses " + to_string(v) + " outside vars");
    if (auto m = check_ephemeral(p, p.eps); !m.empty()) throw err(m);
    if (p.kind == PrimitiveKind::stateful) {
      const auto* dom = net.universe.state_domain(p.id);
      auto q = GroundTerm(to_string(p.eps->terms[1]));
      if (!dom || std::find(dom->begin(), dom->end(), q) == dom->end())
        throw err("initial state " + q.str() + " is not a declared state");
    }
    if (!p.owned.empty() && p.kind != PrimitiveKind::external)
      throw err("only external primitives own symbols");
    for (const auto& f : {p.rho, p.eps})
      for (const auto& sym : external_symbols(f))
        if (!net.ownership.count(sym)) throw err(sym + " has no owner");
  }
  for (const auto& [key, owner] : net.ownership) {
    const Primitive* p = net.find(owner);
    if (!p || p->kind != PrimitiveKind::external)
      throw LoadError(key + " must be owned by an external primitive");
  }
  for (const auto& b : configuration(net)) {
    bool ok = false;
    try {
      ok = check_no_flow_axiom(b, net.interp, net.universe);
    } catch (const ResolutionNeeded& e) {
      throw LoadError("block '" + b.id + "': the no-flow axiom cannot be shown without resolving @" +
                      e.symbol());
    }
    if (!ok) throw LoadError("block '" + b.id + "' violates the no-flow axiom");
  }
}

void require_total_tables(const Network& net) {
  Universe u = net.universe.classical();
  for (const auto& p : net.primitives)
    for (const auto& f : {p.rho, p.eps})
      if (!interpretation_total(f, net.interp, u))
        throw LoadError("primitive '" + p.id +
                        "': classical mode needs total predicate tables over the universe");
}

}  // namespace intercon
