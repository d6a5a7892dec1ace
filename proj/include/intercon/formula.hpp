#pragma once

// Immutable term and formula trees. Derived connectives are expanded by the
// builders, so every consumer deals with the core syntax only.

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "intercon/core.hpp"

namespace intercon {

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  enum class Kind { var, apply, external, hole };

  Kind kind;
  Var var;                  // kind == var
  std::string name;         // function symbol (apply/external) or hole name
  std::vector<Term> args;   // apply/external
  int hole = -1;            // kind == hole
};

enum class Op {
  truth,
  sync,
  overlap,   // ∧: joins compatible solutions
  additive,  // ⩓: both conjuncts with the same assignment
  negation,
  pred,
  ext_pred,
  ext_constr,
  hole,
};

/// Polarity recorded on an external-constraint node by to_simple, so that the
/// body fetched later can be rewritten consistently.
enum class SimpleMark { none, positive, negative };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  Op op;
  std::string name;             // sync var, predicate or constraint symbol, hole name
  std::vector<Formula> kids;    // overlap/additive (2), negation (1), ext_constr formula args
  std::vector<Term> terms;      // pred/ext_pred args, ext_constr term args
  int hole = -1;
  SimpleMark mark = SimpleMark::none;
};

namespace term {
Term var(Var v);
Term dataflow(std::string name);
Term constant(std::string name);
Term apply(std::string fn, std::vector<Term> args);
Term external(std::string fn, std::vector<Term> args);
Term hole(int index, std::string name);
Term ground(const GroundTerm& g);
Term noflow();
}  // namespace term

namespace fm {
Formula truth();
Formula falsity();
Formula sync(std::string name);
Formula overlap(Formula a, Formula b);
Formula additive(Formula a, Formula b);
Formula neg(Formula a);
Formula pred(std::string name, std::vector<Term> args);
Formula eq(Term a, Term b);
Formula ext_pred(std::string name, std::vector<Term> args);
Formula ext_constr(std::string name, std::vector<Formula> formulas, std::vector<Term> terms);
Formula hole(int index, std::string name);

/// ¬(¬a ∧ ¬b)
Formula lor(Formula a, Formula b);
/// ¬(¬a ⩓ ¬b)
Formula additive_or(Formula a, Formula b);
/// ¬(a ∧ ¬b)
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);

/// Overlapping conjunction of all items; True when empty.
Formula conj(const std::vector<Formula>& items);
/// Additive conjunction of all items; True when empty.
Formula additive_conj(const std::vector<Formula>& items);
}  // namespace fm

inline constexpr const char* kEquality = "=";

bool equal(const Term& a, const Term& b);
bool equal(const Formula& a, const Formula& b);

void collect_vars(const Term& t, std::set<Var>& out);
std::set<Var> free_vars(const Term& t);
std::set<Var> free_vars(const Formula& f);

bool is_ground(const Term& t);
bool has_externals(const Term& t);
bool has_externals(const Formula& f);
bool mentions_noflow(const Formula& f);
bool has_holes(const Formula& f);

/// External symbols (`@name`) and communication variables (`$name`) used by f.
std::set<std::string> external_symbols(const Formula& f);

/// Replaces holes by the given formulas and terms (holes index into the
/// concatenation formulas ++ terms).
Formula substitute(const Formula& f, const std::vector<Formula>& formulas,
                   const std::vector<Term>& terms);
Term substitute(const Term& t, const std::vector<Formula>& formulas,
                const std::vector<Term>& terms);

/// Replaces a variable by a term everywhere.
Formula substitute_var(const Formula& f, const Var& v, const Term& by);

std::string to_string(const Term& t);
/// Canonical source text; parse_formula(to_string(f)) rebuilds f.
std::string to_string(const Formula& f);

std::size_t size(const Formula& f);

}  // namespace intercon
