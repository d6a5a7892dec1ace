#include <gtest/gtest.h>

#include <filesystem>

#include "intercon/classical.hpp"
#include "intercon/embeddings.hpp"
#include "intercon/netdsl.hpp"
#include "intercon/oracle.hpp"
#include "intercon/partial.hpp"
#include "intercon/simple.hpp"
#include "support/gen.hpp"

using namespace intercon;

namespace {

const Var x = Var::sync("x");
const Var xd = Var::dataflow("x");
const GroundTerm d("d");

const char* kFilter = "(c -> a) & (c -> (p(^c) & ^a = ^c)) & ((a & p(^a)) -> c)";

std::set<Var> closed(std::initializer_list<const char*> ports) {
  std::set<Var> out;
  for (auto p : ports) {
    out.insert(Var::sync(p));
    out.insert(Var::dataflow(p));
  }
  return out;
}

// Every subset of σ, smallest first.
std::vector<Assignment> subsets(const Assignment& sigma) {
  std::vector<Binding> bs(sigma.begin(), sigma.end());
  std::vector<Assignment> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << bs.size()); ++mask) {
    Assignment s;
    for (std::size_t i = 0; i < bs.size(); ++i)
      if (mask & (std::size_t{1} << i)) s.set(bs[i].var, bs[i].value);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(ClassicalToPartial, DropsNoflow) {
  EXPECT_EQ(classical_to_partial({{x, false}, {xd, GroundTerm::noflow()}}), (Assignment{{x, false}}));
  EXPECT_EQ(classical_to_partial({{x, true}, {xd, d}}), (Assignment{{x, true}, {xd, d}}));
}

TEST(ClassicalToPartial, FilterFiringsBecomePartialFirings) {
  Interpretation i;
  i.set_internal("p", {d}, false);
  i.set_internal("p", {GroundTerm("e")}, true);
  i.set_internal("p", {GroundTerm::noflow()}, false);
  Universe u({d, GroundTerm("e")});
  Formula f = parse_formula(kFilter);
  auto partial = enumerate_partial_firings(f, i.recoded(), u, free_vars(f));
  std::set<Assignment> ps(partial.begin(), partial.end());
  auto classical = enumerate_classical_firings(f, i, u.classical());
  ASSERT_FALSE(classical.empty());
  for (const auto& s : classical) EXPECT_TRUE(ps.count(classical_to_partial(s))) << to_string(s);
}

TEST(PartialToClassical, InventsTheDefaultDatum) {
  Universe u({GroundTerm("d0"), GroundTerm("d1")}, true);
  EXPECT_EQ(partial_to_classical({{x, true}}, {x, xd}, u), (Assignment{{x, true}, {xd, GroundTerm("d0")}}));
}

TEST(PartialToClassical, EmptyBecomesNoFlow) {
  Universe u({d}, true);
  Assignment none{{x, false}, {xd, GroundTerm::noflow()}};
  EXPECT_EQ(partial_to_classical({}, {x, xd}, u), none);
  EXPECT_EQ(partial_to_classical({{x, false}}, {x, xd}, u), none);
}

TEST(PartialToClassical, ConfiguredDefaultDatum) {
  Network net = parse_network("[universe]\ndata = d1, 42\ndefault = 42\n");
  Universe u = net.universe.classical();
  EXPECT_EQ(partial_to_classical({{x, true}}, {x, xd}, u), (Assignment{{x, true}, {xd, GroundTerm("42")}}));
}

TEST(PartialToClassical, VariablesMustCoverTheDomain) {
  EXPECT_THROW(partial_to_classical({{x, true}}, {}, Universe({d}, true)), PreconditionError);
}

TEST(ExtendP, AddsSyncForBoundData) {
  Var a = Var::sync("a"), ad = Var::dataflow("a"), b = Var::sync("b");
  EXPECT_EQ(extend_p({{ad, d}}), (Assignment{{a, true}, {ad, d}}));
  EXPECT_EQ(extend_p({{a, true}}), (Assignment{{a, true}}));
  EXPECT_EQ(extend_p({{b, false}}), (Assignment{{b, false}}));
  EXPECT_THROW(extend_p({{x, false}, {xd, d}}), PreconditionError);
}

TEST(MinimizeToSimple, FilterDropsTheUnrelatedPort) {
  Interpretation i;
  i.set_internal("p", {d}, false);
  Universe u({d});
  Assignment s{{Var::sync("z"), true}, {Var::sync("a"), true}, {Var::sync("c"), false},
               {Var::dataflow("a"), d}};
  auto m = minimize_to_simple(s, parse_formula(kFilter), i, u);
  ASSERT_TRUE(m);
  EXPECT_EQ(*m, (Assignment{{Var::sync("a"), true}, {Var::sync("c"), false}, {Var::dataflow("a"), d}}));
}

TEST(MinimizeToSimple, TrueGivesEmpty) {
  EXPECT_EQ(minimize_to_simple({}, fm::truth(), {}, Universe({d})), Assignment{});
}

TEST(InterpretationTotal, NoflowArgumentsAreFalse) {
  Interpretation i;
  EXPECT_EQ(i.internal("p", {GroundTerm::noflow()}), std::optional<bool>(false));
  i.set_internal("p", {d}, true);
  EXPECT_TRUE(interpretation_total(parse_formula("p(^a)"), i, Universe({d}, true)));
}

TEST(InterpretationTotal, MissingEntry) {
  Interpretation i;
  i.set_internal("p", {d}, true);
  Formula f = parse_formula("p(^a)");
  EXPECT_TRUE(interpretation_total(f, i, Universe({d})));
  EXPECT_FALSE(interpretation_total(f, i, Universe({d, GroundTerm("e")})));
}

// Lemma-level properties, exhaustive over small random instances.

TEST(EmbeddingProperties, ClassicalFiringsMapToPartialFirings) {
  gen::Gen g(51);
  gen::FormulaShape shape;
  shape.additive = false;
  auto vars = closed({"a", "b"});
  for (int n = 0; n < 300; ++n) {
    Universe u = gen::Gen::universe(1 + g.below(2));
    Interpretation interp = g.interpretation(u, true);
    Formula f = g.formula(shape, u);
    auto partial = enumerate_partial_firings(f, interp.recoded(), u, vars);
    std::set<Assignment> ps(partial.begin(), partial.end());
    for (const auto& s : enumerate_classical_firings(f, interp, u.classical(), vars))
      ASSERT_TRUE(ps.count(classical_to_partial(s))) << to_string(f) << ' ' << to_string(s);
  }
}

TEST(EmbeddingProperties, PartialFiringsMapToClassicalFirings) {
  gen::Gen g(52);
  gen::FormulaShape shape;
  shape.additive = false;
  auto vars = closed({"a", "b"});
  for (int n = 0; n < 300; ++n) {
    Universe u = gen::Gen::universe(1 + g.below(2));
    Interpretation interp = g.interpretation(u, true);
    Formula f = g.formula(shape, u);
    auto classical = enumerate_classical_firings(f, interp, u.classical(), vars);
    std::set<Assignment> cs(classical.begin(), classical.end());
    for (const auto& s : enumerate_partial_firings(f, interp, u, vars))
      ASSERT_TRUE(cs.count(partial_to_classical(s, vars, u.classical())))
          << to_string(f) << ' ' << to_string(s);
  }
}

TEST(EmbeddingProperties, PartialFiringsContainSimpleFirings) {
  gen::Gen g(53);
  gen::FormulaShape shape;
  shape.additive = false;
  auto vars = closed({"a", "b"});
  for (int n = 0; n < 300; ++n) {
    Universe u = gen::Gen::universe(1 + g.below(2));
    Interpretation interp = g.interpretation(u);
    Formula f = g.formula(shape, u);
    auto simple = simple_firings(f, interp, u);
    for (const auto& s : enumerate_partial_firings(f, interp, u, vars)) {
      auto m = minimize_to_simple(s, f, interp, u);
      ASSERT_TRUE(m) << to_string(f) << ' ' << to_string(s);
      ASSERT_TRUE(m->subset_of(s));
      ASSERT_TRUE(simple.contains(*m));
      // Independent check: some subset of σ is a simple firing.
      bool found = false;
      for (const auto& sub : subsets(s))
        if (oracle::is_simple_firing(sub, f, interp, free_vars(f))) found = true;
      ASSERT_TRUE(found);
    }
  }
}

TEST(EmbeddingProperties, SimpleFiringsArePartialFiringsOfTheRewrite) {
  gen::Gen g(54);
  gen::FormulaShape shape;
  for (int n = 0; n < 300; ++n) {
    Universe u = gen::Gen::universe(1 + g.below(2));
    Interpretation interp = g.interpretation(u);
    Formula f = g.formula(shape, u);
    Formula fp = to_partial(f);
    for (const auto& s : simple_firings(f, interp, u)) {
      Assignment sp = extend_p(s);
      ASSERT_TRUE(mfa_check(sp));
      ASSERT_EQ(partial_eval(sp, interp, fp), Truth3::sat) << to_string(f) << ' ' << to_string(s);
    }
  }
}

TEST(EmbeddingProperties, SfaSolutionsSatisfyTheMetaFlowAxiom) {
  Universe u = gen::Gen::universe(2);
  for (const auto& s : simple_solutions(sfa({"a", "b"}), {}, u)) ASSERT_TRUE(mfa_check(extend_p(s)));
}

TEST(EmbeddingProperties, FixtureFormulas) {
  for (const auto& entry : std::filesystem::directory_iterator(gen::source_path("nets"))) {
    if (entry.path().extension() != ".net") continue;
    Network net = load_network(entry.path());
    Universe cu = net.universe.classical(), pu = net.universe.partial();
    for (const auto& p : net.primitives) {
      Formula f = plain_formula(p);
      if (!external_symbols(f).empty() || has_externals(f)) continue;
      std::set<Var> vars = flow_closure(p.vars);
      bool flow_only = std::all_of(vars.begin(), vars.end(), [](const Var& v) { return v.is_flow(); });
      auto partial = enumerate_partial_firings(f, net.interp, pu, vars);
      if (flow_only && interpretation_total(f, net.interp, cu) && !mentions_noflow(f)) {
        auto classical = enumerate_classical_firings(f, net.interp, cu, vars);
        auto recoded = enumerate_partial_firings(f, net.interp.recoded(), pu, vars);
        std::set<Assignment> ps(recoded.begin(), recoded.end()), cs(classical.begin(), classical.end());
        for (const auto& s : classical) EXPECT_TRUE(ps.count(classical_to_partial(s))) << p.id;
        for (const auto& s : partial) EXPECT_TRUE(cs.count(partial_to_classical(s, vars, cu))) << p.id;
      }
      for (const auto& s : partial) EXPECT_TRUE(minimize_to_simple(s, f, net.interp, pu)) << p.id;
      for (const auto& s : simple_firings(f, net.interp, pu, vars))
        EXPECT_EQ(partial_eval(extend_p(s), net.interp, to_partial(f)), Truth3::sat) << p.id;
    }
  }
}
