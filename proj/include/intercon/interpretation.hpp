#pragma once

// Interpretation of predicate, function and constraint symbols. Internal
// tables are fixed at load; external entries are filled on demand through an
// ExternalResolver and discarded at the end of each engine round.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intercon/core.hpp"
#include "intercon/formula.hpp"

namespace intercon {

/// λ(v₁..v_{l+k}).body: the first `formula_arity` parameters are formula
/// holes, the rest are term holes.
struct Lambda {
  std::vector<std::string> params;
  std::size_t formula_arity = 0;
  Formula body;
};

std::string to_string(const Lambda& l);

/// Body of `l` with the arguments of the external-constraint node `call`
/// substituted for its parameters. Throws ProtocolError on an arity mismatch.
Formula instantiate(const Lambda& l, const Formula& call);

/// Nesting bound for external constraints whose bodies mention further
/// external constraints.
inline constexpr int kMaxConstraintDepth = 32;

/// Thrown when an external entry is needed but no resolver is attached.
class ResolutionNeeded : public Error {
 public:
  explicit ResolutionNeeded(std::string symbol)
      : Error("external symbol @" + symbol + " needs resolution"), symbol_(std::move(symbol)) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

/// Source of external interpretations. nullopt means the answer is unknown
/// (refused or timed out); callers treat it as undefined, never as false.
class ExternalResolver {
 public:
  virtual ~ExternalResolver() = default;
  virtual std::optional<bool> predicate(const std::string& sym,
                                        const std::vector<GroundTerm>& args) = 0;
  virtual std::optional<GroundTerm> function(const std::string& sym,
                                             const std::vector<GroundTerm>& args) = 0;
  virtual std::optional<Lambda> constraint(const std::string& sym) = 0;
};

/// Whether a lookup may contact the resolver.
enum class Lookup { resolve, cached_only };

class Interpretation {
 public:
  using Key = std::pair<std::string, std::vector<GroundTerm>>;

  Interpretation() = default;
  Interpretation(const Interpretation& other);
  Interpretation& operator=(const Interpretation& other);

  void set_internal(const std::string& pred, std::vector<GroundTerm> args, bool value);
  const std::map<Key, bool>& internal_table() const { return internal_; }
  bool has_internal(const std::string& pred) const;

  /// Internal predicate lookup. Equality is the syntactic diagonal. An
  /// argument equal to NOFLOW yields false unless the table says otherwise.
  std::optional<bool> internal(const std::string& pred, const std::vector<GroundTerm>& args) const;

  /// Partial-mode lookup on possibly undefined arguments. Without the NOFLOW
  /// recoding any undefined argument gives undefined; with it, ⊥ stands in for
  /// NOFLOW.
  std::optional<bool> internal_partial(const std::string& pred,
                                       const std::vector<std::optional<GroundTerm>>& args) const;

  /// The I° view: ⊥ arguments are looked up as NOFLOW entries.
  Interpretation recoded() const;
  bool bottom_is_noflow() const { return bottom_is_noflow_; }

  void attach(std::shared_ptr<ExternalResolver> resolver);
  const std::shared_ptr<ExternalResolver>& resolver() const { return resolver_; }

  std::optional<bool> external_predicate(const std::string& sym,
                                         const std::vector<GroundTerm>& args,
                                         Lookup mode = Lookup::resolve) const;
  std::optional<GroundTerm> external_function(const std::string& sym,
                                              const std::vector<GroundTerm>& args,
                                              Lookup mode = Lookup::resolve) const;
  std::optional<Lambda> external_constraint(const std::string& sym,
                                            Lookup mode = Lookup::resolve) const;

  /// Pre-seeds external entries (tests, cached answers).
  void set_external_predicate(const std::string& sym, std::vector<GroundTerm> args,
                              std::optional<bool> value);
  void set_external_function(const std::string& sym, std::vector<GroundTerm> args,
                             std::optional<GroundTerm> value);
  void set_external_constraint(const std::string& sym, std::optional<Lambda> value);

  bool external_empty() const;
  void reset_external();

  /// Resolutions performed since the last reset, in request order, formatted
  /// as `sym(args):value`.
  std::vector<std::string> resolution_log() const;

 private:
  struct ExternalStore {
    std::map<Key, std::optional<bool>> preds;
    std::map<Key, std::optional<GroundTerm>> funs;
    std::map<std::string, std::optional<Lambda>> constrs;
    std::vector<std::string> log;
  };

  std::map<Key, bool> internal_;
  bool bottom_is_noflow_ = false;
  std::shared_ptr<ExternalResolver> resolver_;
  mutable std::mutex mu_;
  mutable ExternalStore ext_;
};

}  // namespace intercon
