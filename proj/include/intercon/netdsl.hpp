#pragma once

// Surface syntax for formulas, terms, λ-bodies and network files.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "intercon/formula.hpp"
#include "intercon/interpretation.hpp"
#include "intercon/network.hpp"

namespace intercon {

struct ParseContext {
  /// Declared external symbols. `@s(...)` in formula position is an external
  /// constraint when declared as one, an external predicate otherwise.
  const std::map<std::string, Signature>* externals = nullptr;
  /// Values for `?x` pattern parameters.
  std::map<std::string, Term> params;
  /// Reject `|` in positive positions (use `||` there).
  bool check_polarity = true;
};

/// Precedence, loosest first: `<->`, `->` (right-assoc), `|` `||`, `&` `&&`, `!`.
Formula parse_formula(std::string_view src, const ParseContext& ctx = {});

Term parse_term(std::string_view src, const ParseContext& ctx = {});

/// `d1`, `full(d1)`; no variables.
GroundTerm parse_ground(std::string_view src);

/// `lambda(v1,...,vn).body`. The first `formula_arity` parameters stand for
/// formulas, the rest for terms.
Lambda parse_lambda(std::string_view src, std::size_t formula_arity,
                    const ParseContext& ctx = {});

/// Parses and validates a network file. `name` is used in diagnostics.
Network parse_network(std::string_view text, const std::string& name = "<network>");

Network load_network(const std::filesystem::path& path);

}  // namespace intercon
