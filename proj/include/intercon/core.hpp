#pragma once

// Variables, ground terms, assignments and the finite data universe shared by
// every semantics.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace intercon {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed network file, formula source, or a violated load-time invariant.
class LoadError : public Error {
 public:
  using Error::Error;
};

/// Misbehaving external endpoint (bad reply, transport failure).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Caller violated an operation precondition; indicates a logic bug.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

enum class VarKind : std::uint8_t { sync, dataflow, state, state_next, comm };

/// A variable interned by (kind, name). A sync variable `x` and its data-flow
/// partner `^x` share the name. State variables are named after their primitive.
struct Var {
  VarKind kind = VarKind::sync;
  std::string name;

  static Var sync(std::string name) { return {VarKind::sync, std::move(name)}; }
  static Var dataflow(std::string name) { return {VarKind::dataflow, std::move(name)}; }
  static Var state(std::string prim) { return {VarKind::state, std::move(prim)}; }
  static Var state_next(std::string prim) { return {VarKind::state_next, std::move(prim)}; }
  static Var comm(std::string name) { return {VarKind::comm, std::move(name)}; }

  bool is_sync() const { return kind == VarKind::sync; }
  bool is_flow() const { return kind == VarKind::sync || kind == VarKind::dataflow; }

  // Ordered by name first so that x and ^x sit next to each other.
  friend std::strong_ordering operator<=>(const Var& a, const Var& b) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    return a.kind <=> b.kind;
  }
  friend bool operator==(const Var&, const Var&) = default;
};

std::string to_string(const Var& v);
std::string to_string(VarKind k);

/// Sync variables paired with every flow variable in `vars` (x for x and ^x).
std::set<std::string> ports(const std::set<Var>& vars);

/// `vars` closed under the x / ^x pairing.
std::set<Var> flow_closure(const std::set<Var>& vars);

/// A ground constructor term kept in canonical textual form, e.g. `full(d1)`.
class GroundTerm {
 public:
  GroundTerm() = default;
  explicit GroundTerm(std::string text) : text_(std::move(text)) {}

  static GroundTerm apply(std::string_view fn, std::span<const GroundTerm> args);
  static const GroundTerm& noflow();

  bool is_noflow() const;
  const std::string& str() const { return text_; }

  friend auto operator<=>(const GroundTerm&, const GroundTerm&) = default;
  friend bool operator==(const GroundTerm&, const GroundTerm&) = default;

 private:
  std::string text_;
};

using Value = std::variant<bool, GroundTerm>;

std::string to_string(const Value& v);

struct Binding {
  Var var;
  Value value;

  friend auto operator<=>(const Binding&, const Binding&) = default;
  friend bool operator==(const Binding&, const Binding&) = default;
};

/// Partial map from variables to values. Bindings are kept sorted by variable,
/// which gives a canonical form for comparison and printing.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<Binding> bindings);

  const Value* find(const Var& v) const;
  bool contains(const Var& v) const { return find(v) != nullptr; }
  std::optional<bool> sync(std::string_view name) const;
  const GroundTerm* term(const Var& v) const;

  void set(Var v, Value value);
  void erase(const Var& v);

  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  auto begin() const { return bindings_.begin(); }
  auto end() const { return bindings_.end(); }

  bool subset_of(const Assignment& other) const;
  std::set<Var> domain() const;
  bool has_noflow() const;

  /// Restriction to the variables in `vars`.
  Assignment restrict(const std::set<Var>& vars) const;

  friend auto operator<=>(const Assignment&, const Assignment&) = default;
  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<Binding> bindings_;
};

/// True iff the two assignments agree on every variable bound by both.
bool compatible(const Assignment& a, const Assignment& b);

/// Pointwise union; throws PreconditionError on incompatible inputs.
Assignment unite(const Assignment& a, const Assignment& b);

/// Pointwise union, or nullopt when the inputs disagree somewhere.
std::optional<Assignment> try_unite(const Assignment& a, const Assignment& b);

/// `{a=true,^a=d1}`, variables in canonical order.
std::string to_string(const Assignment& a);

struct AssignmentHash {
  std::size_t operator()(const Assignment& a) const;
};

/// Per-variable choices for exhaustive enumeration; nullopt leaves the
/// variable unbound.
using Options = std::vector<std::optional<Value>>;

/// Calls fn for every combination of options, first variable varying slowest.
/// Stops early when fn returns false.
void for_each_assignment(const std::vector<Var>& vars, const std::vector<Options>& options,
                         const std::function<bool(const Assignment&)>& fn);

/// Finite, ordered set of ground data values plus per-variable domains for
/// state variables.
class Universe {
 public:
  Universe() : Universe({GroundTerm("unit")}) {}
  explicit Universe(std::vector<GroundTerm> data, bool noflow_enabled = false);

  const std::vector<GroundTerm>& data() const { return data_; }
  bool noflow_enabled() const { return noflow_; }
  bool contains(const GroundTerm& t) const;

  /// Copy of this universe with NOFLOW in play.
  Universe classical() const;
  /// Copy of this universe with NOFLOW removed.
  Universe partial() const;

  /// Domain for `state.p` and `state'.p`.
  void set_state_domain(const std::string& prim, std::vector<GroundTerm> values);
  const std::vector<GroundTerm>* state_domain(const std::string& prim) const;

  /// Candidate values for a term variable (NOFLOW appended in classical mode).
  std::vector<GroundTerm> values(const Var& v) const;

  const GroundTerm& default_datum() const { return default_; }
  void set_default_datum(GroundTerm d);

 private:
  std::vector<GroundTerm> data_;
  bool noflow_ = false;
  std::map<std::string, std::vector<GroundTerm>> state_domains_;
  GroundTerm default_;
};

}  // namespace intercon
