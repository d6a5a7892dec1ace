#pragma once

// Seeded random instances for the property tests.

#include <cstdint>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "intercon/core.hpp"
#include "intercon/formula.hpp"
#include "intercon/interpretation.hpp"
#include "intercon/locality.hpp"

namespace intercon {

inline void PrintTo(const Var& v, std::ostream* os) { *os << to_string(v); }
inline void PrintTo(const Assignment& a, std::ostream* os) { *os << to_string(a); }
inline void PrintTo(const GroundTerm& g, std::ostream* os) { *os << g.str(); }

}  // namespace intercon

namespace intercon::gen {

/// Path of a file in the source tree, for fixtures.
inline std::string source_path(const std::string& rel) {
  return std::string(INTERCON_SOURCE_DIR) + "/" + rel;
}

struct FormulaShape {
  std::vector<std::string> ports{"a", "b"};
  int depth = 3;
  bool additive = true;     // emit && as well as &
  bool predicates = true;   // p(^x) atoms
  bool equalities = true;   // ^x = ^y and ^x = d atoms
  bool noflow = false;      // allow the NOFLOW constant
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  /// d1..dn.
  static Universe universe(std::size_t n);

  Formula formula(const FormulaShape& shape, const Universe& u);
  Term term(const FormulaShape& shape, const Universe& u);

  /// Random total table for the unary predicate p over the data (and NOFLOW
  /// when `classical`).
  Interpretation interpretation(const Universe& u, bool classical = false);

  /// Random partial assignment over `vars` (no NOFLOW).
  Assignment partial(const std::set<Var>& vars, const Universe& u, double density = 0.6);

  /// Superset of σ binding some extra variables of `vars`.
  Assignment extend(const Assignment& sigma, const std::set<Var>& vars, const Universe& u);

  /// Random configuration of `blocks` small formulas, each closed under its
  /// firing axiom the way the loader builds blocks.
  Configuration configuration(std::size_t blocks, const std::vector<std::string>& ports,
                              const Universe& u);

 private:
  Formula formula(const FormulaShape& shape, const Universe& u, int depth);
  std::mt19937_64 rng_;
};

}  // namespace intercon::gen
