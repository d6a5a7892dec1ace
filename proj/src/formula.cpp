#include "intercon/formula.hpp"

namespace intercon {

namespace term {

Term var(Var v) {
  if (v.kind == VarKind::sync)
    throw PreconditionError("sync variable " + v.name + " cannot be used as a term");
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::var;
  n->var = std::move(v);
  return n;
}

Term dataflow(std::string name) { return var(Var::dataflow(std::move(name))); }

Term constant(std::string name) { return apply(std::move(name), {}); }

Term apply(std::string fn, std::vector<Term> args) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::apply;
  n->name = std::move(fn);
  n->args = std::move(args);
  return n;
}

Term external(std::string fn, std::vector<Term> args) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::external;
  n->name = std::move(fn);
  n->args = std::move(args);
  return n;
}

Term hole(int index, std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::hole;
  n->hole = index;
  n->name = std::move(name);
  return n;
}

namespace {

// Splits canonical ground text `f(a,g(b))` back into a tree.
Term parse_ground(const std::string& s, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < s.size() && s[pos] != '(' && s[pos] != ',' && s[pos] != ')') ++pos;
  std::string fn = s.substr(start, pos - start);
  std::vector<Term> args;
  if (pos < s.size() && s[pos] == '(') {
    ++pos;
    while (true) {
      args.push_back(parse_ground(s, pos));
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < s.size() && s[pos] == ')') ++pos;
      break;
    }
  }
  return apply(std::move(fn), std::move(args));
}

}  // namespace

Term ground(const GroundTerm& g) {
  std::size_t pos = 0;
  return parse_ground(g.str(), pos);
}

Term noflow() { return constant(GroundTerm::noflow().str()); }

}  // namespace term

namespace fm {

namespace {

Formula make(Op op) {
  auto n = std::make_shared<FormulaNode>();
  n->op = op;
  return n;
}

}  // namespace

Formula truth() {
  static const Formula t = make(Op::truth);
  return t;
}

Formula falsity() { return neg(truth()); }

Formula sync(std::string name) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::sync;
  n->name = std::move(name);
  return n;
}

Formula overlap(Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::overlap;
  n->kids = {std::move(a), std::move(b)};
  return n;
}

Formula additive(Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::additive;
  n->kids = {std::move(a), std::move(b)};
  return n;
}

Formula neg(Formula a) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::negation;
  n->kids = {std::move(a)};
  return n;
}

Formula pred(std::string name, std::vector<Term> args) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::pred;
  n->name = std::move(name);
  n->terms = std::move(args);
  return n;
}

Formula eq(Term a, Term b) { return pred(kEquality, {std::move(a), std::move(b)}); }

Formula ext_pred(std::string name, std::vector<Term> args) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::ext_pred;
  n->name = std::move(name);
  n->terms = std::move(args);
  return n;
}

Formula ext_constr(std::string name, std::vector<Formula> formulas, std::vector<Term> terms) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::ext_constr;
  n->name = std::move(name);
  n->kids = std::move(formulas);
  n->terms = std::move(terms);
  return n;
}

Formula hole(int index, std::string name) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::hole;
  n->hole = index;
  n->name = std::move(name);
  return n;
}

Formula lor(Formula a, Formula b) { return neg(overlap(neg(std::move(a)), neg(std::move(b)))); }

Formula additive_or(Formula a, Formula b) {
  return neg(additive(neg(std::move(a)), neg(std::move(b))));
}

Formula implies(Formula a, Formula b) { return neg(overlap(std::move(a), neg(std::move(b)))); }

Formula iff(Formula a, Formula b) { return overlap(implies(a, b), implies(b, a)); }

Formula conj(const std::vector<Formula>& items) {
  if (items.empty()) return truth();
  Formula acc = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) acc = overlap(acc, items[i]);
  return acc;
}

Formula additive_conj(const std::vector<Formula>& items) {
  if (items.empty()) return truth();
  Formula acc = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) acc = additive(acc, items[i]);
  return acc;
}

}  // namespace fm

bool equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->hole != b->hole) return false;
  if (a->kind == TermNode::Kind::var && a->var != b->var) return false;
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a->op != b->op || a->name != b->name || a->hole != b->hole || a->mark != b->mark)
    return false;
  if (a->kids.size() != b->kids.size() || a->terms.size() != b->terms.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!equal(a->kids[i], b->kids[i])) return false;
  for (std::size_t i = 0; i < a->terms.size(); ++i)
    if (!equal(a->terms[i], b->terms[i])) return false;
  return true;
}

void collect_vars(const Term& t, std::set<Var>& out) {
  if (t->kind == TermNode::Kind::var) out.insert(t->var);
  for (const auto& a : t->args) collect_vars(a, out);
}

std::set<Var> free_vars(const Term& t) {
  std::set<Var> out;
  collect_vars(t, out);
  return out;
}

namespace {

void collect_vars(const Formula& f, std::set<Var>& out) {
  if (f->op == Op::sync) out.insert(Var::sync(f->name));
  for (const auto& k : f->kids) collect_vars(k, out);
  for (const auto& t : f->terms) intercon::collect_vars(t, out);
}

template <class TermPred, class FormulaPred>
bool any_node(const Formula& f, TermPred tp, FormulaPred fp);

template <class TermPred>
bool any_term(const Term& t, TermPred tp) {
  if (tp(t)) return true;
  for (const auto& a : t->args)
    if (any_term(a, tp)) return true;
  return false;
}

template <class TermPred, class FormulaPred>
bool any_node(const Formula& f, TermPred tp, FormulaPred fp) {
  if (fp(f)) return true;
  for (const auto& k : f->kids)
    if (any_node(k, tp, fp)) return true;
  for (const auto& t : f->terms)
    if (any_term(t, tp)) return true;
  return false;
}

}  // namespace

std::set<Var> free_vars(const Formula& f) {
  std::set<Var> out;
  collect_vars(f, out);
  return out;
}

bool is_ground(const Term& t) {
  return !any_term(t, [](const Term& n) {
    return n->kind == TermNode::Kind::var || n->kind == TermNode::Kind::hole ||
           n->kind == TermNode::Kind::external;
  });
}

bool has_externals(const Term& t) {
  return any_term(t, [](const Term& n) { return n->kind == TermNode::Kind::external; });
}

bool has_externals(const Formula& f) {
  return any_node(
      f, [](const Term& n) { return n->kind == TermNode::Kind::external; },
      [](const Formula& n) { return n->op == Op::ext_pred || n->op == Op::ext_constr; });
}

bool mentions_noflow(const Formula& f) {
  return any_node(
      f,
      [](const Term& n) {
        return n->kind == TermNode::Kind::apply && n->args.empty() &&
               n->name == GroundTerm::noflow().str();
      },
      [](const Formula&) { return false; });
}

bool has_holes(const Formula& f) {
  return any_node(
      f, [](const Term& n) { return n->kind == TermNode::Kind::hole; },
      [](const Formula& n) { return n->op == Op::hole; });
}

namespace {

void collect_symbols(const Term& t, std::set<std::string>& out) {
  if (t->kind == TermNode::Kind::external) out.insert("@" + t->name);
  if (t->kind == TermNode::Kind::var && t->var.kind == VarKind::comm) out.insert("$" + t->var.name);
  for (const auto& a : t->args) collect_symbols(a, out);
}

void collect_symbols(const Formula& f, std::set<std::string>& out) {
  if (f->op == Op::ext_pred || f->op == Op::ext_constr) out.insert("@" + f->name);
  for (const auto& k : f->kids) collect_symbols(k, out);
  for (const auto& t : f->terms) collect_symbols(t, out);
}

}  // namespace

std::set<std::string> external_symbols(const Formula& f) {
  std::set<std::string> out;
  collect_symbols(f, out);
  return out;
}

Term substitute(const Term& t, const std::vector<Formula>& formulas,
                const std::vector<Term>& terms) {
  if (t->kind == TermNode::Kind::hole) {
    auto idx = static_cast<std::size_t>(t->hole);
    if (idx < formulas.size())
      throw PreconditionError("formula parameter " + t->name + " used as a term");
    idx -= formulas.size();
    if (idx >= terms.size()) throw PreconditionError("unbound parameter " + t->name);
    return terms[idx];
  }
  if (t->args.empty()) return t;
  auto n = std::make_shared<TermNode>(*t);
  for (auto& a : n->args) a = substitute(a, formulas, terms);
  return n;
}

Formula substitute(const Formula& f, const std::vector<Formula>& formulas,
                   const std::vector<Term>& terms) {
  if (f->op == Op::hole) {
    auto idx = static_cast<std::size_t>(f->hole);
    if (idx >= formulas.size())
      throw PreconditionError("term parameter " + f->name + " used as a formula");
    return formulas[idx];
  }
  if (f->kids.empty() && f->terms.empty()) return f;
  auto n = std::make_shared<FormulaNode>(*f);
  for (auto& k : n->kids) k = substitute(k, formulas, terms);
  for (auto& t : n->terms) t = substitute(t, formulas, terms);
  return n;
}

namespace {

Term substitute_var(const Term& t, const Var& v, const Term& by) {
  if (t->kind == TermNode::Kind::var) return t->var == v ? by : t;
  if (t->args.empty()) return t;
  auto n = std::make_shared<TermNode>(*t);
  for (auto& a : n->args) a = substitute_var(a, v, by);
  return n;
}

}  // namespace

Formula substitute_var(const Formula& f, const Var& v, const Term& by) {
  if (f->kids.empty() && f->terms.empty()) return f;
  auto n = std::make_shared<FormulaNode>(*f);
  for (auto& k : n->kids) k = substitute_var(k, v, by);
  for (auto& t : n->terms) t = substitute_var(t, v, by);
  return n;
}

std::string to_string(const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::var: return to_string(t->var);
    case TermNode::Kind::hole: return t->name;
    case TermNode::Kind::apply:
    case TermNode::Kind::external: {
      std::string s = t->kind == TermNode::Kind::external ? "@" + t->name : t->name;
      if (t->args.empty() && t->kind == TermNode::Kind::apply) return s;
      s += '(';
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) s += ',';
        s += to_string(t->args[i]);
      }
      s += ')';
      return s;
    }
  }
  return "?";
}

namespace {

std::string args_text(const Formula& f) {
  std::string s = "(";
  bool first = true;
  for (const auto& k : f->kids) {
    if (!first) s += ',';
    first = false;
    s += to_string(k);
  }
  for (const auto& t : f->terms) {
    if (!first) s += ',';
    first = false;
    s += to_string(t);
  }
  s += ')';
  return s;
}

bool is_neg(const Formula& f) { return f->op == Op::negation; }

}  // namespace

std::string to_string(const Formula& f) {
  switch (f->op) {
    case Op::truth: return "true";
    case Op::sync: return f->name;
    case Op::hole: return f->name;
    case Op::overlap: return "(" + to_string(f->kids[0]) + " & " + to_string(f->kids[1]) + ")";
    case Op::additive: return "(" + to_string(f->kids[0]) + " && " + to_string(f->kids[1]) + ")";
    case Op::pred:
      if (f->name == kEquality && f->terms.size() == 2)
        return to_string(f->terms[0]) + " = " + to_string(f->terms[1]);
      return f->name + args_text(f);
    case Op::ext_pred:
    case Op::ext_constr: return "@" + f->name + args_text(f);
    case Op::negation: {
      const Formula& k = f->kids[0];
      if (k->op == Op::truth) return "false";
      if (k->op == Op::additive && is_neg(k->kids[0]) && is_neg(k->kids[1]))
        return "(" + to_string(k->kids[0]->kids[0]) + " || " + to_string(k->kids[1]->kids[0]) +
               ")";
      if (k->op == Op::overlap && is_neg(k->kids[1]))
        return "(" + to_string(k->kids[0]) + " -> " + to_string(k->kids[1]->kids[0]) + ")";
      if (k->op == Op::pred && k->name == kEquality) return "!(" + to_string(k) + ")";
      return "!" + to_string(k);
    }
  }
  return "?";
}

std::size_t size(const Formula& f) {
  std::size_t n = 1 + f->terms.size();
  for (const auto& k : f->kids) n += size(k);
  return n;
}

}  // namespace intercon
